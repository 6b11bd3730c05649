//! Numerical tolerances shared across the crate.
//!
//! Every threshold used by the checks lives here so that tests and reports
//! agree on the same numbers.

/// Relative round-trip tolerance for `f(f⁻¹(θ)) = θ`, scaled by `max(1, f(0))`.
pub const INVERSE_REL: f64 = 1e-12;

/// Residual bound for the generalized h-index, scaled by `max(1, Z(0))`.
pub const H_RESIDUAL_REL: f64 = 1e-10;

/// A violation of a non-strict inequality must exceed this gap.
pub const VIOLATION_SLACK: f64 = 1e-9;

/// A strict inequality `a > b` is considered violated when `a - b` does not
/// exceed this value.
pub const STRICT_SLACK: f64 = 1e-12;

/// Tolerance for asserted equalities (AX.4, ax.4, axiom II's `Y = X` clause).
pub const EQUALITY_TOL: f64 = 1e-10;

/// Maximum deviation for two functions to be called equal on a prefix.
pub const PREFIX_EQUAL_TOL: f64 = 1e-12;

/// Slack on a Zhang radicand `R² − h²` before it is treated as an error.
pub const RADICAND_SLACK: f64 = 1e-12;

/// Default grid size for sampled comparisons and sup norms.
pub const DEFAULT_GRID: usize = 10_000;
