//! Kerr-Newman event-horizon geometry.
//!
//! Forward model: physical parameters `(m, a, e)` -> horizon radius
//! `r_+ = m + sqrt(m^2 - a^2 - e^2)` -> Smarr shape
//! `(eta^2, beta^2) = (r_+^2 + a^2, a^2 / (r_+^2 + a^2))` -> profile
//! function, Gauss curvature, and area of the horizon 2-metric
//!
//! ```text
//! ds^2 = eta^2 (dx^2 / f(x) + f(x) dphi^2),
//! f(x) = (1 - x^2) / (1 - beta^2 (1 - x^2)).
//! ```
//!
//! Geometric units: `m`, `a`, `e` are lengths and `eta^2` a squared length.

use crate::error::{Error, Result};

/// Relative tolerance on `m^2 - a^2 - e^2` below which a horizon is treated
/// as exactly extremal and the discriminant clamped to zero.
pub const EXTREMAL_TOL: f64 = 1e-12;

/// Black-hole triple: mass, angular momentum per unit mass, charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    m: f64,
    a: f64,
    e: f64,
}

impl PhysicalParams {
    /// Validates the triple. An event horizon exists only for
    /// `m^2 >= a^2 + e^2`; equality (to within [`EXTREMAL_TOL`]) marks an
    /// extremal hole.
    pub fn new(m: f64, a: f64, e: f64) -> Result<Self> {
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::NonPositiveMass { m });
        }
        if a < 0.0 {
            return Err(Error::NegativeParameter { name: "spin", value: a });
        }
        if e < 0.0 {
            return Err(Error::NegativeParameter { name: "charge", value: e });
        }
        let disc = m * m - a * a - e * e;
        if disc < -EXTREMAL_TOL * m * m {
            return Err(Error::HorizonAbsent { m, a, e });
        }
        Ok(PhysicalParams { m, a, e })
    }

    /// Uncharged (Kerr) parameters.
    pub fn kerr(m: f64, a: f64) -> Result<Self> {
        Self::new(m, a, 0.0)
    }

    pub fn mass(&self) -> f64 {
        self.m
    }

    pub fn spin(&self) -> f64 {
        self.a
    }

    pub fn charge(&self) -> f64 {
        self.e
    }

    /// Discriminant `m^2 - a^2 - e^2`, clamped to zero inside the extremal
    /// tolerance band.
    fn discriminant(&self) -> f64 {
        let disc = self.m * self.m - self.a * self.a - self.e * self.e;
        if disc.abs() <= EXTREMAL_TOL * self.m * self.m {
            0.0
        } else {
            disc
        }
    }

    /// `m^2 = a^2 + e^2` within the tolerance band.
    pub fn is_extremal(&self) -> bool {
        self.discriminant() == 0.0
    }

    /// Horizon radius, the largest root of `r^2 - 2 m r + a^2 + e^2`.
    pub fn r_plus(&self) -> f64 {
        self.m + self.discriminant().sqrt()
    }

    /// Smarr parameters of the horizon 2-metric.
    pub fn smarr_shape(&self) -> SmarrShape {
        let rp = self.r_plus();
        let eta2 = rp * rp + self.a * self.a;
        SmarrShape {
            eta2,
            beta2: self.a * self.a / eta2,
        }
    }
}

/// Scale `eta^2` and distortion `beta^2` of the horizon 2-metric.
///
/// `beta^2 <= 1/2` always: the spin cannot exceed the horizon radius for
/// any admissible parameter triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmarrShape {
    eta2: f64,
    beta2: f64,
}

impl SmarrShape {
    pub fn new(eta2: f64, beta2: f64) -> Result<Self> {
        if !eta2.is_finite() || eta2 <= 0.0 {
            return Err(Error::InvalidShape {
                reason: format!("scale eta^2 must be positive and finite, got {eta2}"),
            });
        }
        if !(0.0..=0.5).contains(&beta2) {
            return Err(Error::InvalidShape {
                reason: format!("distortion beta^2 must lie in [0, 1/2], got {beta2}"),
            });
        }
        Ok(SmarrShape { eta2, beta2 })
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }

    pub fn beta2(&self) -> f64 {
        self.beta2
    }

    /// Horizon area `4 pi eta^2`.
    pub fn area(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.eta2
    }

    /// The profile function of the horizon metric.
    pub fn profile(&self) -> MetricProfile {
        MetricProfile { shape: *self }
    }

    /// Gauss curvature `K(x) = (1 - beta^2 (1 + 3 x^2))
    /// / (eta^2 (1 - beta^2 (1 - x^2))^3)`.
    ///
    /// Negative at the poles exactly when `beta^2 > 1/4`. Panics for
    /// `|x| > 1`.
    pub fn gauss_curvature(&self, x: f64) -> f64 {
        assert!(x.abs() <= 1.0, "argument {x} outside [-1, 1]");
        let b = self.beta2;
        let s = (1.0 - x) * (1.0 + x);
        let denom = 1.0 - b * s;
        (1.0 - b * (1.0 + 3.0 * x * x)) / (self.eta2 * denom * denom * denom)
    }

    /// Inverts the Smarr map for a given charge: recovers the unique
    /// `(m, a, e)` whose horizon has this shape.
    ///
    /// Fails with [`Error::ChargeTooLarge`] when `e^2 > r_+^2 - a^2 =
    /// eta^2 (1 - 2 beta^2)`; beyond that bound the candidate radius is no
    /// longer the larger root of the horizon polynomial, so no black hole
    /// with this horizon shape carries that much charge.
    pub fn physical_params(&self, charge: f64) -> Result<PhysicalParams> {
        if charge < 0.0 {
            return Err(Error::NegativeParameter {
                name: "charge",
                value: charge,
            });
        }
        let a2 = self.eta2 * self.beta2;
        let rp2 = self.eta2 * (1.0 - self.beta2);
        let e2_max = rp2 - a2;
        if charge * charge > e2_max + EXTREMAL_TOL * self.eta2 {
            return Err(Error::ChargeTooLarge {
                e: charge,
                e_max: e2_max.max(0.0).sqrt(),
            });
        }
        let rp = rp2.sqrt();
        let m = (self.eta2 + charge * charge) / (2.0 * rp);
        PhysicalParams::new(m, a2.sqrt(), charge)
    }
}

/// The profile function `f` of the horizon metric, evaluable on [-1, 1].
///
/// `f > 0` on the open interval, `f(+-1) = 0`, and the boundary slopes are
/// `f'(-1) = 2 = -f'(1)`, the smooth-pole condition for a metric on the
/// sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricProfile {
    shape: SmarrShape,
}

impl MetricProfile {
    pub fn shape(&self) -> &SmarrShape {
        &self.shape
    }

    /// `f(x) = (1 - x^2) / (1 - beta^2 (1 - x^2))`.
    ///
    /// Returns exactly 0 at the endpoints rather than evaluating the
    /// rational expression there. Panics for `|x| > 1`.
    pub fn eval(&self, x: f64) -> f64 {
        assert!(x.abs() <= 1.0, "argument {x} outside [-1, 1]");
        if x.abs() == 1.0 {
            return 0.0;
        }
        let s = (1.0 - x) * (1.0 + x);
        s / (1.0 - self.shape.beta2 * s)
    }
}
