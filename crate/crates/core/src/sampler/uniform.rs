use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use super::{Method, SamplerError, SamplerReport};
use crate::problems::{solve_checked, Solver};
use crate::sample::SampleSet;
use crate::weight::{grid_size, simplex_grid, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UniformMode {
    /// The finest simplex grid with at most `K` points (it always contains the basis).
    Grid,
    /// The basis plus `K − n` draws from the flat Dirichlet distribution.
    Random,
}

/// Baseline sampler. Reports no certified bound.
pub fn uniform_sample<S: Solver + ?Sized>(
    solver: &S,
    budget: usize,
    mode: UniformMode,
    seed: u64,
) -> Result<SamplerReport, SamplerError> {
    let n = solver.dimension();
    if n < 2 {
        return Err(SamplerError::DimensionTooSmall(n));
    }
    if budget < n {
        return Err(SamplerError::BudgetTooSmall { budget, dimension: n });
    }
    let weights = match mode {
        UniformMode::Grid => {
            let mut m = 1;
            while grid_size(n, m + 1) <= budget {
                m += 1;
            }
            simplex_grid(n, m)
        }
        UniformMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ws: Vec<WeightVector> = (0..n).map(|i| WeightVector::basis(n, i)).collect();
            while ws.len() < budget {
                let raw: Vec<f64> = (0..n).map(|_| Exp1.sample(&mut rng)).collect();
                ws.push(WeightVector::normalize(&raw).expect("exponential draws are positive"));
            }
            ws
        }
    };
    let mut omega = SampleSet::new(n);
    let mut calls = 0;
    for w in weights {
        if omega.find(&w).is_some() {
            continue;
        }
        omega.insert(solve_checked(solver, &w)?)?;
        calls += 1;
    }
    Ok(SamplerReport {
        method: match mode {
            UniformMode::Grid => Method::UniformGrid,
            UniformMode::Random => Method::UniformRandom,
        },
        omega,
        certified_bound: None,
        solver_calls: calls,
        per_iteration_bounds: Vec::new(),
        seed: (mode == UniformMode::Random).then_some(seed),
        converged: None,
    })
}
