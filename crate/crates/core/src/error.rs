//! Error type shared by all modules of the crate.

/// Errors produced by horizon validation, spectral discretization, trace
/// estimation, and trace inversion.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The mass parameter must be strictly positive.
    #[error("mass must be positive, got m = {m}")]
    NonPositiveMass { m: f64 },

    /// Spin and charge are lengths and cannot be negative.
    #[error("{name} must be nonnegative, got {value}")]
    NegativeParameter { name: &'static str, value: f64 },

    /// `m^2 < a^2 + e^2`: the horizon polynomial has no real root.
    #[error("no event horizon: m^2 < a^2 + e^2 for (m, a, e) = ({m}, {a}, {e})")]
    HorizonAbsent { m: f64, a: f64, e: f64 },

    /// No black hole with the requested horizon shape carries this much charge.
    #[error("charge too large for this horizon shape: e = {e} exceeds maximum {e_max}")]
    ChargeTooLarge { e: f64, e_max: f64 },

    /// Scale must be positive and the distortion within `[0, 1/2]`.
    #[error("invalid horizon shape: {reason}")]
    InvalidShape { reason: String },

    /// Galerkin basis too small for the requested computation.
    #[error("basis size {n} is below the minimum {min}")]
    BasisTooSmall { n: usize, min: usize },

    /// Doubling the basis moved an eigenvalue by more than the tolerance.
    #[error(
        "eigenvalue {index} not converged: basis doubling changed it by {change:e} (tolerance {tol:e})"
    )]
    ConvergenceFailure { index: usize, change: f64, tol: f64 },

    /// The quadratic tail model does not describe the trailing eigenvalues.
    #[error("tail model rejected: {reason}")]
    TailModelRejected { reason: String },

    /// Spectra must consist of strictly positive, strictly increasing values.
    #[error("invalid eigenvalue at position {index}: {value} (spectrum must be positive and strictly increasing)")]
    NonPositiveEigenvalue { index: usize, value: f64 },

    /// Not enough modes for the requested tail window.
    #[error("trace estimation needs at least {need} modes, got {have}")]
    TooFewModes { have: usize, need: usize },

    /// Trace values incompatible with any Kerr-Newman horizon.
    #[error("invalid traces: {reason}")]
    InvalidTraces { reason: String },

    /// Green's operator traces are sums of positive terms.
    #[error("trace for channel k = {k} must be positive, got {value}")]
    ZeroTrace { k: i32, value: f64 },

    /// The requested equivariant channel is not present in the trace set.
    #[error("trace set has no channel k = {k}")]
    ChannelMissing { k: i32 },
}

pub type Result<T> = std::result::Result<T, Error>;
