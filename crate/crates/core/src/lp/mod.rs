//! Small dense linear programs and the neighborhood max-min regret LP.

mod regret;
mod simplex;

pub use regret::{max_min_neighborhood_regret, neighborhood_regret_lp, RegretForm};
pub use simplex::solve_lp;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite coefficient in {0}")]
    NonFinite(&'static str),
    #[error("LP did not reach an optimum: {0:?}")]
    NotOptimal(LpStatus),
    #[error("simplex exceeded {0} pivots")]
    IterationLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// `maximize c·x` subject to `A_eq x = b_eq`, `A_ge x ≥ b_ge` and per-variable
/// lower bounds (default `x ≥ 0`; `None` marks a free variable).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub equality_rows: Vec<Vec<f64>>,
    pub equality_rhs: Vec<f64>,
    pub inequality_rows: Vec<Vec<f64>>,
    pub inequality_rhs: Vec<f64>,
    pub lower_bounds: Vec<Option<f64>>,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            equality_rows: Vec::new(),
            equality_rhs: Vec::new(),
            inequality_rows: Vec::new(),
            inequality_rhs: Vec::new(),
            lower_bounds: vec![Some(0.0); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds `row · x = rhs`.
    pub fn eq(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.equality_rows.push(row);
        self.equality_rhs.push(rhs);
        self
    }

    /// Adds `row · x ≥ rhs`.
    pub fn ge(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.inequality_rows.push(row);
        self.inequality_rhs.push(rhs);
        self
    }

    /// Adds `row · x ≤ rhs`, stored as `-row · x ≥ -rhs`.
    pub fn le(self, row: Vec<f64>, rhs: f64) -> Self {
        let neg = row.into_iter().map(|v| -v).collect();
        self.ge(neg, -rhs)
    }

    /// Removes the lower bound on variable `var`.
    pub fn free(mut self, var: usize) -> Self {
        self.lower_bounds[var] = None;
        self
    }

    pub fn lower_bound(mut self, var: usize, bound: f64) -> Self {
        self.lower_bounds[var] = Some(bound);
        self
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.lower_bounds.len() != n {
            return Err(LpError::DimensionMismatch(format!(
                "{} bounds for {n} variables",
                self.lower_bounds.len()
            )));
        }
        if self.equality_rows.len() != self.equality_rhs.len()
            || self.inequality_rows.len() != self.inequality_rhs.len()
        {
            return Err(LpError::DimensionMismatch("row and rhs counts differ".into()));
        }
        for (kind, rows) in [("equality", &self.equality_rows), ("inequality", &self.inequality_rows)] {
            if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
                return Err(LpError::DimensionMismatch(format!(
                    "{kind} row {i} has {} columns, objective has {n}",
                    r.len()
                )));
            }
        }
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if !finite(&self.objective) {
            return Err(LpError::NonFinite("objective"));
        }
        if !self.equality_rows.iter().all(|r| finite(r)) || !finite(&self.equality_rhs) {
            return Err(LpError::NonFinite("equality rows"));
        }
        if !self.inequality_rows.iter().all(|r| finite(r)) || !finite(&self.inequality_rhs) {
            return Err(LpError::NonFinite("inequality rows"));
        }
        if !self.lower_bounds.iter().flatten().all(|b| b.is_finite()) {
            return Err(LpError::NonFinite("bounds"));
        }
        Ok(())
    }

    /// Largest constraint violation of `x` (0 when feasible).
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let dot = |r: &[f64]| r.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        let eq = self
            .equality_rows
            .iter()
            .zip(&self.equality_rhs)
            .map(|(r, b)| (dot(r) - b).abs());
        let ge = self
            .inequality_rows
            .iter()
            .zip(&self.inequality_rhs)
            .map(|(r, b)| (b - dot(r)).max(0.0));
        let lb = self
            .lower_bounds
            .iter()
            .zip(x)
            .map(|(l, v)| l.map_or(0.0, |l| (l - v).max(0.0)));
        eq.chain(ge).chain(lb).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub variables: Vec<f64>,
    pub objective_value: f64,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}
