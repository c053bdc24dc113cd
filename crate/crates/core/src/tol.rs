//! Numerical tolerances shared across the crate.

/// Eigenvalues in `[-EPS_PSD, 0)` are clamped to zero; anything lower is not a state.
pub const EPS_PSD: f64 = 1e-9;
/// Normalized L2 norm of `[A, Z^n]` below which `A` counts as even.
pub const EPS_EVEN: f64 = 1e-9;
/// Normalized L2 norm of `U^dag U - I` below which `U` counts as unitary.
pub const EPS_UNITARY: f64 = 1e-9;
/// Eigenvalues above this count toward the rank (Renyi order 0).
pub const EPS_RANK: f64 = 1e-12;
/// Acceptance probability threshold for the Gaussian verdict.
pub const EPS_TEST: f64 = 1e-7;
/// Purity tolerance for "pure state" preconditions.
pub const EPS_PURE: f64 = 1e-8;
/// Trace / Hermiticity tolerance for state checks.
pub const EPS_STATE: f64 = 1e-8;
/// Antisymmetry tolerance for covariance-like matrices.
pub const EPS_ANTISYM: f64 = 1e-10;
/// Slack on the physical covariance condition.
pub const EPS_COV: f64 = 1e-9;
