//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias for `std::result::Result` with [`PhsymError`].
pub type Result<T> = std::result::Result<T, PhsymError>;

/// Errors produced by construction and verification routines.
#[derive(Debug, Error)]
pub enum PhsymError {
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Matrix or operator dimensions are incompatible.
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Operation being attempted.
        context: String,
        /// Expected dimension.
        expected: usize,
        /// Dimension actually supplied.
        found: usize,
    },

    /// Two operators live on incompatible spaces.
    #[error("space mismatch in {0}")]
    SpaceMismatch(String),

    /// A formal expression mixes particle-number sectors on a
    /// sector-fixed space.
    #[error("expression changes particle number by {net} and cannot be realized on a sector-fixed space")]
    SectorMismatch {
        /// Net particle-number change of the offending word.
        net: i64,
    },

    /// A matrix failed a Hermiticity check.
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian {
        /// Max-norm of `A - A†`.
        residual: f64,
        /// Allowed residual.
        tolerance: f64,
    },

    /// A pairing matrix failed the antisymmetry check.
    #[error("pairing matrix is not antisymmetric: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotAntisymmetric {
        /// Max-norm of `Δ + Δᵀ`.
        residual: f64,
        /// Allowed residual.
        tolerance: f64,
    },

    /// The unitary part of an antilinear map failed the unitarity check.
    #[error("antilinear map is not unitary: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotUnitary {
        /// Max-norm of `M†M - 1`.
        residual: f64,
        /// Allowed residual.
        tolerance: f64,
    },

    /// A matrix expected to be an involution is not.
    #[error("matrix is not an involution: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotInvolution {
        /// Max-norm of `Γ² - 1`.
        residual: f64,
        /// Allowed residual.
        tolerance: f64,
    },

    /// An eigenvalue sits too close to a splitting tolerance to classify.
    #[error("tolerance straddles a level: |E| = {eigenvalue:.6e} is within a factor 4 of tol = {tolerance:.6e}")]
    ToleranceStraddle {
        /// Absolute value of the ambiguous eigenvalue.
        eigenvalue: f64,
        /// Splitting tolerance in use.
        tolerance: f64,
    },

    /// An iterative eigensolver failed to converge.
    #[error("eigensolver failed to converge: {0}")]
    ConvergenceFailure(String),

    /// A Bloch map passed through (numerical) zero, so its winding is
    /// undefined.
    #[error("winding undefined: |f(k)| = {magnitude:.3e} at k = {k:.6} (gap closes)")]
    GapCloses {
        /// Magnitude of the map at the offending sample.
        magnitude: f64,
        /// Sample momentum.
        k: f64,
    },

    /// Accumulated winding phase is too far from an integer multiple of 2π.
    #[error("winding not quantized: accumulated phase / 2π = {value:.6} deviates from an integer by {deviation:.3e}")]
    WindingNotQuantized {
        /// Accumulated phase divided by 2π.
        value: f64,
        /// Distance to the nearest integer.
        deviation: f64,
    },

    /// The ground space is not invariant under the antiunitary symmetry.
    #[error("ground space is not K-invariant: residual {residual:.3e} exceeds {tolerance:.3e}")]
    GroundSpaceNotInvariant {
        /// Max-norm of `K V₀ - V₀ B`.
        residual: f64,
        /// Allowed residual.
        tolerance: f64,
    },

    /// `K²` restricted to the ground space is not a scalar `±1`.
    #[error("K² on the ground space is not ±1: residual {residual:.3e}")]
    KSquaredNotScalar {
        /// Distance of the restricted `K²` from the nearer of `±1`.
        residual: f64,
    },

    /// A verification that is part of a builder's contract failed.
    #[error("construction self-check failed: {check}: residual {residual:.3e} exceeds {tolerance:.3e}")]
    SelfCheckFailed {
        /// Name of the self-check.
        check: String,
        /// Observed residual.
        residual: f64,
        /// Allowed residual.
        tolerance: f64,
    },
}

impl PhsymError {
    /// Shorthand for [`PhsymError::InvalidArgument`].
    pub fn invalid(msg: impl Into<String>) -> Self {
        PhsymError::InvalidArgument(msg.into())
    }
}
