//! Numerical tolerances used across the crate.
//!
//! Everything here is sized for small dense problems in double precision.
//! The lattice thresholds are one order looser than the element-wise ones
//! to absorb accumulated orthonormalization error.

/// Element-wise absolute tolerance for matrix/vector comparisons.
pub const EPS_NUM: f64 = 1e-9;

/// Tolerance on `|⟨v|v⟩ − 1|` for a vector to count as normalized.
pub const EPS_NORM: f64 = 1e-9;

/// Maximum distance of a projector eigenvalue from `{0, 1}`.
pub const EPS_EIG: f64 = 1e-7;

/// Singular values above this count toward the rank of a spanning set.
pub const SIGMA_RANK: f64 = 1e-8;

/// Subspace-membership tolerance (weighted two-norm of the residual).
pub const EPS_MEM: f64 = 1e-8;

/// Fraction of spectral probability allowed to reach the grid boundary
/// during free evolution. Hard-windowed slit states carry `1/k` spectral
/// tails from the window edges, so around a percent of the probability
/// reaches the boundary by the time the packets overlap; the guard is set
/// to the loosest level that still catches a grid too narrow (or a time
/// too long) to keep the visible pattern intact.
pub const EPS_WRAP: f64 = 1.5e-2;

/// Residual norms in `(SIGMA_RANK / 16, SIGMA_RANK * 16)` are ambiguous:
/// rather than guessing the rank we report an ill-conditioned subspace.
pub const RANK_BAND: f64 = 16.0;

/// `sin²θ` below this counts a principal angle θ as zero (intersection).
pub const MEET_ACCEPT: f64 = 1e-12;

/// `sin²θ` between [`MEET_ACCEPT`] and this is ambiguous and rejected.
pub const MEET_BAND: f64 = 1e-9;
