//! Forward and inverse spectral geometry of Kerr-Newman event horizons.
//!
//! The horizon of a rotating, charged black hole is a distorted 2-sphere
//! whose metric is fixed by two Smarr parameters: a scale `eta^2` and a
//! distortion `beta^2`. This crate computes the spectra of the equivariant
//! Laplacian operators `L_k` on such a horizon, estimates the Green's
//! operator traces `gamma_k = sum_j 1 / lambda_k^j`, and inverts those
//! traces back into the horizon metric and the black hole parameters
//! `(m, a, e)`.
//!
//! Modules:
//! - [`numerics`]: quadrature, dense symmetric eigensolver, associated
//!   Legendre basis.
//! - [`horizon`]: physical parameters, Smarr shape, metric profile,
//!   curvature, area.
//! - [`spectral`]: Galerkin discretization of `L_k`, eigenvalue lists,
//!   numerical trace estimates.
//! - [`inverse`]: closed-form traces, trace inversion, metric
//!   reconstruction, and end-to-end round trips.
//!
//! Geometric units throughout (`G = c = 1`): masses, spins, and charges are
//! lengths; eigenvalues carry 1/length^2; traces carry length^2.
//!
//! ```
//! use kerrspec_core::inverse::{roundtrip, TraceSource};
//! use kerrspec_core::PhysicalParams;
//!
//! // A Kerr hole with m = 5, a = 3 has traces gamma_0 = 84, gamma_1 = 90;
//! // inverting them recovers the parameters.
//! let params = PhysicalParams::new(5.0, 3.0, 0.0)?;
//! let report = roundtrip(&params, TraceSource::closed_form())?;
//! assert!(report.max_rel_deviation < 1e-12);
//! # Ok::<(), kerrspec_core::Error>(())
//! ```

pub mod error;
pub mod horizon;
pub mod inverse;
pub mod numerics;
pub mod spectral;

pub use error::{Error, Result};
pub use horizon::{MetricProfile, PhysicalParams, SmarrShape};
pub use inverse::{ReconstructionReport, RoundtripReport, TraceSet, TraceSource};
pub use numerics::{QuadratureRule, SymMatrix};
pub use spectral::{ModeSpectrum, TraceEstimate};
