//! Trace inversion: from Green's operator traces back to the horizon
//! metric and the black hole parameters.
//!
//! The closed forms for the horizon are
//!
//! ```text
//! gamma_0 = eta^2 (1 - 2 beta^2 / 3),      gamma_k = eta^2 / |k|  (k != 0),
//! ```
//!
//! which invert to `eta^2 = |k| gamma_k` and
//! `beta^2 = (3/2) (1 - gamma_0 / eta^2)`. From the recovered shape the
//! physical parameters follow:
//!
//! ```text
//! a^2 = (3/2) (gamma_1 - gamma_0),    r_+^2 = (3 gamma_0 - gamma_1) / 2,
//! m^2 = (gamma_1 + e^2)^2 / (6 gamma_0 - 2 gamma_1),    A = 4 pi k gamma_k.
//! ```
//!
//! The mass formula involves the charge: with `e > 0` the spectrum alone
//! does not fix `m`, so the charge is an explicit input everywhere here
//! (defaulting to the uncharged Kerr case in the CLI).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::horizon::{MetricProfile, PhysicalParams, SmarrShape};
use crate::spectral;

/// Relative spread allowed between `|k| gamma_k` across stored channels,
/// all of which should equal `eta^2`. Numerical trace estimates land well
/// inside this; anything outside is not a horizon trace set.
pub const CHANNEL_CONSISTENCY_TOL: f64 = 1e-2;

/// Width of the band below 0 (and above 1/2) from which a recovered
/// `beta^2` is clamped onto the boundary instead of rejected. Absorbs tail
/// estimation noise near the Schwarzschild and extremal boundaries.
pub const BETA2_CLAMP_TOL: f64 = 1e-9;

/// Round-trip acceptance tolerance on closed-form traces.
pub const ROUNDTRIP_TOL_CLOSED: f64 = 1e-12;

/// Round-trip acceptance tolerance on numerically estimated traces with at
/// least 60 modes per channel.
pub const ROUNDTRIP_TOL_NUMERIC: f64 = 1e-3;

/// The S^1-invariant trace `gamma_0` together with equivariant traces for
/// one or more channels `k != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSet {
    gamma0: f64,
    equivariant: BTreeMap<i32, f64>,
}

impl TraceSet {
    /// Validates positivity and the cross-channel consistency required of
    /// horizon traces: every `|k| gamma_k` estimates the same `eta^2`, to
    /// within [`CHANNEL_CONSISTENCY_TOL`] relative.
    pub fn new(gamma0: f64, channels: impl IntoIterator<Item = (i32, f64)>) -> Result<Self> {
        if !gamma0.is_finite() || gamma0 <= 0.0 {
            return Err(Error::ZeroTrace { k: 0, value: gamma0 });
        }
        let mut equivariant = BTreeMap::new();
        for (k, value) in channels {
            if k == 0 {
                return Err(Error::InvalidTraces {
                    reason: "channel k = 0 belongs in gamma0, not the equivariant map".into(),
                });
            }
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::ZeroTrace { k, value });
            }
            equivariant.insert(k, value);
        }
        if equivariant.is_empty() {
            return Err(Error::InvalidTraces {
                reason: "at least one equivariant channel k != 0 is required".into(),
            });
        }
        let estimates: Vec<f64> = equivariant
            .iter()
            .map(|(&k, &g)| f64::from(k.unsigned_abs()) * g)
            .collect();
        let max = estimates.iter().cloned().fold(f64::MIN, f64::max);
        let min = estimates.iter().cloned().fold(f64::MAX, f64::min);
        if (max - min) / max > CHANNEL_CONSISTENCY_TOL {
            return Err(Error::InvalidTraces {
                reason: format!(
                    "channels disagree on the scale: |k| gamma_k spans [{min}, {max}]"
                ),
            });
        }
        Ok(TraceSet { gamma0, equivariant })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// The stored trace for channel `k`, if any.
    pub fn gamma(&self, k: i32) -> Option<f64> {
        self.equivariant.get(&k).copied()
    }

    pub fn channels(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.equivariant.iter().map(|(&k, &g)| (k, g))
    }

    /// Relative deviation of each channel's `|k| gamma_k` from a reference
    /// scale.
    pub fn channel_residuals(&self, eta2: f64) -> BTreeMap<i32, f64> {
        self.equivariant
            .iter()
            .map(|(&k, &g)| (k, (f64::from(k.unsigned_abs()) * g - eta2).abs() / eta2))
            .collect()
    }
}

/// Exact traces of the horizon with the given shape, for channels
/// `0, 1, ..., k_max`.
///
/// ```
/// use kerrspec_core::inverse::{shape_from_traces, traces_closed_form};
/// use kerrspec_core::SmarrShape;
///
/// let shape = SmarrShape::new(4.0, 0.0)?; // Schwarzschild, m = 1
/// let traces = traces_closed_form(&shape, 2);
/// assert_eq!(traces.gamma0(), 4.0);
/// assert_eq!(traces.gamma(2), Some(2.0));
/// let recovered = shape_from_traces(&traces, 2)?;
/// assert_eq!(recovered.shape.eta2(), 4.0);
/// # Ok::<(), kerrspec_core::Error>(())
/// ```
pub fn traces_closed_form(shape: &SmarrShape, k_max: u32) -> TraceSet {
    assert!(k_max >= 1, "at least one equivariant channel is required");
    let eta2 = shape.eta2();
    let gamma0 = eta2 * (1.0 - 2.0 * shape.beta2() / 3.0);
    let channels = (1..=k_max).map(|k| (k as i32, eta2 / k as f64));
    TraceSet::new(gamma0, channels).expect("closed-form traces are always consistent")
}

/// Result of inverting a trace pair into Smarr parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeRecovery {
    pub shape: SmarrShape,
    /// True when the raw `beta^2` fell just outside [0, 1/2] and was
    /// clamped onto the boundary.
    pub clamped_beta2: bool,
}

/// Inverts `(gamma_0, gamma_k)` into the Smarr shape using the given
/// equivariant channel: `eta^2 = |k| gamma_k`,
/// `beta^2 = (3/2)(1 - gamma_0 / eta^2)`.
///
/// A `beta^2` within [`BETA2_CLAMP_TOL`] below 0 or above 1/2 is clamped
/// and flagged; anything further out is rejected, since no Kerr-Newman
/// horizon has such a shape.
pub fn shape_from_traces(traces: &TraceSet, channel: i32) -> Result<ShapeRecovery> {
    if channel == 0 {
        return Err(Error::InvalidTraces {
            reason: "the inversion channel must have k != 0".into(),
        });
    }
    let gamma_k = traces
        .gamma(channel)
        .ok_or(Error::ChannelMissing { k: channel })?;
    let eta2 = f64::from(channel.unsigned_abs()) * gamma_k;
    let raw = 1.5 * (1.0 - traces.gamma0() / eta2);
    let mut clamped = false;
    let beta2 = if raw < 0.0 {
        if raw < -BETA2_CLAMP_TOL {
            return Err(Error::InvalidTraces {
                reason: format!("recovered beta^2 = {raw} is negative"),
            });
        }
        clamped = true;
        0.0
    } else if raw > 0.5 {
        if raw > 0.5 + BETA2_CLAMP_TOL {
            return Err(Error::InvalidTraces {
                reason: format!("recovered beta^2 = {raw} exceeds the extremal bound 1/2"),
            });
        }
        clamped = true;
        0.5
    } else {
        raw
    };
    Ok(ShapeRecovery {
        shape: SmarrShape::new(eta2, beta2)?,
        clamped_beta2: clamped,
    })
}

/// Reconstructs the horizon metric from `(gamma_0, gamma_1)`.
///
/// The returned profile evaluates the normalized `f`; the scale of the
/// metric is `eta^2 = gamma_1`, carried by the profile's shape. The
/// `phi phi` coefficient of the reconstructed metric is
/// `gamma_1 (1 - x^2) / (1 - (3/2)(1 - gamma_0 / gamma_1)(1 - x^2))`.
pub fn reconstruct_metric(traces: &TraceSet) -> Result<MetricProfile> {
    let recovery = shape_from_traces(traces, 1)?;
    Ok(recovery.shape.profile())
}

/// Consistency diagnostics carried by a [`ReconstructionReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct Residuals {
    /// Per-channel relative deviation of `|k| gamma_k` from the recovered
    /// `eta^2`.
    pub channels: BTreeMap<i32, f64>,
    /// Relative disagreement between the mass obtained through the Smarr
    /// inversion and the direct formula
    /// `m = (eta^2 + e^2) / sqrt(6 gamma_0 - 2 eta^2)`.
    pub mass_cross_check: f64,
}

/// Recovered shape and physical parameters, with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport {
    pub shape: SmarrShape,
    pub physical: PhysicalParams,
    /// Horizon area `4 pi eta^2 = 4 pi |k| gamma_k`.
    pub area: f64,
    pub clamped_beta2: bool,
    /// True when a nonzero charge entered the mass recovery; the spectrum
    /// alone fixes the mass only in the uncharged case.
    pub charge_supplied: bool,
    pub residuals: Residuals,
}

/// Full parameter recovery from traces: shape, then `(m, a, e)`.
///
/// `channel` selects which equivariant trace provides `eta^2` (the CLI
/// defaults to `k = 1`, the largest trace and the best conditioned). The
/// mass is computed twice, through the Smarr inversion and through the
/// direct trace formula, and the relative gap is recorded.
pub fn physical_from_traces(
    traces: &TraceSet,
    charge: f64,
    channel: i32,
) -> Result<ReconstructionReport> {
    let recovery = shape_from_traces(traces, channel)?;
    let shape = recovery.shape;
    let physical = shape.physical_params(charge)?;

    // Direct route, straight from the raw traces.
    let eta2 = shape.eta2();
    let denom = 6.0 * traces.gamma0() - 2.0 * eta2;
    let mass_direct = (eta2 + charge * charge) / denom.sqrt();
    let mass_cross_check = (mass_direct - physical.mass()).abs() / physical.mass();

    Ok(ReconstructionReport {
        shape,
        physical,
        area: shape.area(),
        clamped_beta2: recovery.clamped_beta2,
        charge_supplied: charge > 0.0,
        residuals: Residuals {
            channels: traces.channel_residuals(eta2),
            mass_cross_check,
        },
    })
}

/// Where the traces of a round trip come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceSource {
    /// Exact closed forms; channels `1..=k_max`.
    ClosedForm { k_max: u32 },
    /// Eigensolve plus tail-corrected trace estimation for `k = 0` and
    /// `k = 1`, with `modes` eigenvalues per channel from a Galerkin basis
    /// of `basis_size`.
    Numeric { modes: usize, basis_size: usize },
}

impl TraceSource {
    pub fn closed_form() -> Self {
        TraceSource::ClosedForm { k_max: 1 }
    }

    /// Numeric source with the default basis margin `2 J + 16`.
    pub fn numeric(modes: usize) -> Self {
        TraceSource::Numeric { modes, basis_size: 2 * modes + 16 }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, TraceSource::Numeric { .. })
    }
}

/// Tail window used for trace estimation with `modes` eigenvalues.
pub fn default_tail_window(modes: usize) -> usize {
    (modes / 5).max(8)
}

/// Outcome of a forward-then-invert round trip.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport {
    pub input: PhysicalParams,
    pub traces: TraceSet,
    pub reconstruction: ReconstructionReport,
    /// Largest relative deviation between input and recovered `(m, a)`.
    pub max_rel_deviation: f64,
    /// Mode-dependent acceptance tolerance for the deviation.
    pub tolerance: f64,
}

impl RoundtripReport {
    pub fn within_tolerance(&self) -> bool {
        self.max_rel_deviation <= self.tolerance
    }
}

/// Runs the full pipeline: forward Smarr map, traces (exact or numeric),
/// inversion, and comparison of the recovered `(m, a)` against the input.
pub fn roundtrip(params: &PhysicalParams, source: TraceSource) -> Result<RoundtripReport> {
    let shape = params.smarr_shape();
    let traces = match source {
        TraceSource::ClosedForm { k_max } => traces_closed_form(&shape, k_max),
        TraceSource::Numeric { modes, basis_size } => {
            let window = default_tail_window(modes);
            if modes < 3 * window {
                return Err(Error::TooFewModes { have: modes, need: 3 * window });
            }
            let invariant = spectral::trace_numeric(
                &spectral::eigenvalues(0, &shape, modes, basis_size)?,
                window,
            )?;
            let equivariant = spectral::trace_numeric(
                &spectral::eigenvalues(1, &shape, modes, basis_size)?,
                window,
            )?;
            TraceSet::new(invariant.value, [(1, equivariant.value)])?
        }
    };
    let reconstruction = physical_from_traces(&traces, params.charge(), 1)?;

    let mass_dev = (reconstruction.physical.mass() - params.mass()).abs() / params.mass();
    let spin_scale = if params.spin() > 0.0 { params.spin() } else { params.mass() };
    let spin_dev = (reconstruction.physical.spin() - params.spin()).abs() / spin_scale;
    let tolerance = if source.is_numeric() {
        ROUNDTRIP_TOL_NUMERIC
    } else {
        ROUNDTRIP_TOL_CLOSED
    };
    Ok(RoundtripReport {
        input: *params,
        traces,
        reconstruction,
        max_rel_deviation: mass_dev.max(spin_dev),
        tolerance,
    })
}
