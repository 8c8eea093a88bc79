use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::problems::{solve_checked, Solver, SolverError};
use crate::sample::{Sample, SampleSet};
use crate::weight::{simplex_grid, WeightVector};

/// Optimal costs at or below this are too small for a meaningful ratio.
const ZERO_COST: f64 = 1e-12;

/// `r(w′|w*)`: extra cost under `w_star` from using the solution in `sample`.
pub fn regret<S: Solver + ?Sized>(sample: &Sample, w_star: &WeightVector, solver: &S) -> Result<f64, MetricsError> {
    check_dim(sample, w_star)?;
    let u = solve_checked(solver, w_star)?.cost;
    Ok(w_star.dot(&sample.features) - u)
}

/// `w* · f(s*(w′)) / u(w*)`.
pub fn relative_regret<S: Solver + ?Sized>(
    sample: &Sample,
    w_star: &WeightVector,
    solver: &S,
) -> Result<f64, MetricsError> {
    check_dim(sample, w_star)?;
    let u = solve_checked(solver, w_star)?.cost;
    if u <= ZERO_COST {
        return Err(MetricsError::ZeroOptimalCost(u));
    }
    Ok(w_star.dot(&sample.features) / u)
}

fn check_dim(sample: &Sample, w: &WeightVector) -> Result<(), MetricsError> {
    if sample.dimension() != w.dimension() {
        return Err(MetricsError::DimensionMismatch {
            expected: w.dimension(),
            found: sample.dimension(),
        });
    }
    Ok(())
}

/// Grid resolution used for ground truth by default: 1000, 100 and 40 for
/// two, three and four objectives.
pub fn default_grid_resolution(n: usize) -> usize {
    match n {
        0..=2 => 1000,
        3 => 100,
        4 => 40,
        _ => 20,
    }
}

/// How far a grid maximum of an `L`-Lipschitz regret can sit below the true maximum.
pub fn grid_slack(lipschitz: f64, resolution: usize) -> f64 {
    lipschitz * std::f64::consts::SQRT_2 / resolution as f64
}

/// Wraps a solver with a concurrent cache keyed by the weight's bit pattern.
pub struct CachedSolver<S> {
    inner: S,
    cache: RwLock<HashMap<Vec<u64>, Sample>>,
}

impl<S: Solver> CachedSolver<S> {
    pub fn new(inner: S) -> Self {
        Self {
            inner,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    pub fn cached(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}

impl<S: Solver> Solver for CachedSolver<S> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn solve(&self, w: &WeightVector) -> Result<Sample, SolverError> {
        let key = w.key();
        if let Some(s) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        let s = self.inner.solve(w)?;
        // identical keys always produce identical samples, so a racing insert is harmless
        self.cache.write().expect("cache lock").insert(key, s.clone());
        Ok(s)
    }
}

/// `u(w*)` on every point of a simplex grid, reusable across sample sets.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    resolution: usize,
    points: Vec<(WeightVector, f64)>,
}

impl GroundTruth {
    pub fn new<S: Solver + ?Sized>(solver: &S, resolution: usize) -> Result<Self, MetricsError> {
        let grid = simplex_grid(solver.dimension(), resolution);
        let points = grid
            .into_par_iter()
            .map(|w| {
                let u = solve_checked(solver, &w)?.cost;
                Ok((w, u))
            })
            .collect::<Result<Vec<_>, SolverError>>()?;
        Ok(Self { resolution, points })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn points(&self) -> &[(WeightVector, f64)] {
        &self.points
    }

    /// Max over the grid of `min over Ω` of regret, plus the relative version.
    ///
    /// Grid points with `u ≤ 1e-12` are left out of the relative maximum; it is
    /// `None` if every point is.
    pub fn evaluate(&self, omega: &SampleSet) -> Result<RegretReport, MetricsError> {
        if omega.is_empty() {
            return Err(MetricsError::EmptySet);
        }
        let n = self.points[0].0.dimension();
        if omega.dimension() != n {
            return Err(MetricsError::DimensionMismatch {
                expected: n,
                found: omega.dimension(),
            });
        }
        let per_point: Vec<(f64, Option<f64>)> = self
            .points
            .par_iter()
            .map(|(w, u)| {
                let best = omega.iter().map(|s| w.dot(&s.features)).fold(f64::INFINITY, f64::min);
                (best - u, (*u > ZERO_COST).then(|| best / u))
            })
            .collect();
        // sequential reduction keeps the argmax (first maximum) deterministic
        let mut arg = 0;
        let mut rel: Option<f64> = None;
        for (i, &(r, q)) in per_point.iter().enumerate() {
            if r > per_point[arg].0 {
                arg = i;
            }
            if let Some(q) = q {
                rel = Some(rel.map_or(q, |m: f64| m.max(q)));
            }
        }
        Ok(RegretReport {
            max_regret: per_point[arg].0,
            argmax_weight: self.points[arg].0.clone(),
            max_relative_regret: rel,
            grid_resolution: self.resolution,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretReport {
    pub max_regret: f64,
    pub argmax_weight: WeightVector,
    /// Pure ratio `w*·f / u(w*)`; subtract 1 for the excess form.
    pub max_relative_regret: Option<f64>,
    pub grid_resolution: usize,
}

/// Ground-truth max regret of `omega` by brute force over `simplex_grid(n, resolution)`.
pub fn max_regret_given_set<S: Solver + ?Sized>(
    omega: &SampleSet,
    solver: &S,
    resolution: usize,
) -> Result<RegretReport, MetricsError> {
    if omega.dimension() != solver.dimension() {
        return Err(MetricsError::DimensionMismatch {
            expected: solver.dimension(),
            found: omega.dimension(),
        });
    }
    GroundTruth::new(solver, resolution)?.evaluate(omega)
}
