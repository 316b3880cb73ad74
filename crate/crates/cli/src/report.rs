//! JSON report layout shared by all commands.
//!
//! Top-level keys are `input`, `shape`, `physical`, `spectral` (only when
//! a command produces spectral data), `flags`, and `residuals`. Maps are
//! B-tree backed so repeated runs serialize byte-identically.

use std::collections::BTreeMap;

use serde::Serialize;

use kerrspec_core::{MetricProfile, PhysicalParams, SmarrShape, TraceEstimate};

#[derive(Serialize)]
pub struct Report {
    pub input: serde_json::Value,
    pub shape: Option<ShapeReport>,
    pub physical: Option<PhysicalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralReport>,
    pub flags: BTreeMap<&'static str, bool>,
    pub residuals: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(input: serde_json::Value) -> Self {
        Report {
            input,
            shape: None,
            physical: None,
            spectral: None,
            flags: BTreeMap::new(),
            residuals: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}

#[derive(Serialize)]
pub struct ShapeReport {
    pub eta2: f64,
    pub beta2: f64,
    pub area: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature_pole: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature_equator: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<ProfilePoint>>,
}

impl ShapeReport {
    pub fn bare(shape: &SmarrShape) -> Self {
        ShapeReport {
            eta2: shape.eta2(),
            beta2: shape.beta2(),
            area: shape.area(),
            curvature_pole: None,
            curvature_equator: None,
            profile: None,
        }
    }

    /// Full geometry block: curvature at the poles and the equator plus a
    /// 101-point table of the profile function.
    pub fn detailed(shape: &SmarrShape) -> Self {
        let profile = shape.profile();
        ShapeReport {
            curvature_pole: Some(shape.gauss_curvature(1.0)),
            curvature_equator: Some(shape.gauss_curvature(0.0)),
            profile: Some(profile_table(&profile)),
            ..Self::bare(shape)
        }
    }
}

#[derive(Serialize)]
pub struct ProfilePoint {
    pub x: f64,
    pub f: f64,
}

pub fn profile_table(profile: &MetricProfile) -> Vec<ProfilePoint> {
    (0..=100)
        .map(|i| {
            let x = -1.0 + 0.02 * f64::from(i);
            ProfilePoint { x, f: profile.eval(x.clamp(-1.0, 1.0)) }
        })
        .collect()
}

#[derive(Serialize)]
pub struct PhysicalReport {
    pub m: f64,
    pub a: f64,
    pub e: f64,
    pub r_plus: f64,
}

impl From<&PhysicalParams> for PhysicalReport {
    fn from(p: &PhysicalParams) -> Self {
        PhysicalReport {
            m: p.mass(),
            a: p.spin(),
            e: p.charge(),
            r_plus: p.r_plus(),
        }
    }
}

#[derive(Serialize)]
pub struct SpectralReport {
    /// Eigenvalue rows, present for `spectrum --format json`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<Vec<ModeRow>>,
    /// Per-channel trace estimates, present for `traces`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<BTreeMap<i32, TraceReport>>,
    /// Per-channel trace values, present for `roundtrip`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_values: Option<BTreeMap<i32, f64>>,
}

#[derive(Serialize)]
pub struct ModeRow {
    pub k: i32,
    pub j: usize,
    pub lambda: f64,
}

#[derive(Serialize)]
pub struct TraceReport {
    pub value: f64,
    pub partial_sum: f64,
    pub tail_correction: f64,
    pub modes_used: usize,
}

impl From<&TraceEstimate> for TraceReport {
    fn from(est: &TraceEstimate) -> Self {
        TraceReport {
            value: est.value,
            partial_sum: est.partial_sum,
            tail_correction: est.tail_correction,
            modes_used: est.modes_used,
        }
    }
}
