//! Weight-space sampling: the min-regret greedy sampler and a uniform baseline.

mod mrps;
mod uniform;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use mrps::{mrps_sample, mrps_sample_to_tolerance, split_neighborhood, MrpsSampler, Step};
pub use uniform::{uniform_sample, UniformMode};

use crate::neighborhood::NeighborhoodError;
use crate::problems::SolverError;
use crate::sample::{SampleSet, SampleSetError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplerError {
    #[error("budget {budget} is smaller than the {dimension} basis weights")]
    BudgetTooSmall { budget: usize, dimension: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("problem must have at least 2 objectives, got {0}")]
    DimensionTooSmall(usize),
    #[error("solver failed: {0}")]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Neighborhood(#[from] NeighborhoodError),
    #[error(transparent)]
    SampleSet(#[from] SampleSetError),
    #[error("sampler made no progress after {0} iterations")]
    IterationLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Mrps,
    UniformGrid,
    UniformRandom,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mrps => "mrps",
            Method::UniformGrid => "uniform-grid",
            Method::UniformRandom => "uniform-random",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mrps" => Ok(Method::Mrps),
            "uniform-grid" => Ok(Method::UniformGrid),
            "uniform-random" => Ok(Method::UniformRandom),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// Outcome of a sampling run.
///
/// `certified_bound` is `None` for the uniform baseline, which carries no
/// guarantee. `converged` is set only by tolerance-driven runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerReport {
    pub method: Method,
    pub omega: SampleSet,
    pub certified_bound: Option<f64>,
    pub solver_calls: usize,
    pub per_iteration_bounds: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
}
