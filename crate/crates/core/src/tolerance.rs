//! Numerical tolerances shared across the crate.
//!
//! The underlying mathematics is exact; these constants pin down how that
//! math is checked in `f64`.

/// Allowed deviation of a weight vector's component sum from 1.
pub const SUM: f64 = 1e-9;

/// Minimum pivot magnitude for a set of weights to count as linearly independent.
pub const RANK: f64 = 1e-9;

/// Euclidean distance below which two weights are treated as the same weight.
pub const DUPLICATE: f64 = 1e-9;

/// Slack allowed on barycentric coordinates when testing hull membership.
pub const HULL: f64 = 1e-7;

/// Feasibility / optimality tolerance for LP solutions.
pub const LP: f64 = 1e-8;

/// Regret bounds at or below `BOUND_ZERO * max(1, |largest feature|)` are reported as 0.
pub const BOUND_ZERO: f64 = 1e-9;
