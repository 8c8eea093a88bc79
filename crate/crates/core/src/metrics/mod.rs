//! Regret measures, grid ground truth, Pareto fronts and hypervolume.

mod hypervolume;
mod regret;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hypervolume::{
    default_reference, hypervolume, hypervolume_gap, hypervolume_monte_carlo, pareto_front_2d, ParetoFront2D,
};
pub use regret::{
    default_grid_resolution, grid_slack, max_regret_given_set, regret, relative_regret, CachedSolver, GroundTruth,
    RegretReport,
};

use crate::problems::SolverError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("optimal cost {0} is not positive; relative regret is undefined")]
    ZeroOptimalCost(f64),
    #[error("sample set is empty")]
    EmptySet,
    #[error("point {index} exceeds the reference point")]
    BadReference { index: usize },
    #[error("expected {expected} objectives, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("solver failed: {0}")]
    Solver(#[from] SolverError),
}

/// One evaluation result as a CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub method: String,
    #[serde(rename = "K")]
    pub k: usize,
    pub seed: u64,
    pub max_regret: f64,
    pub max_relative_regret: Option<f64>,
    pub hypervolume: Option<f64>,
    pub grid_resolution: usize,
}
