use super::{argmin_cost, ProblemError, Solver, SolverError};
use crate::sample::{Sample, Solution};
use crate::weight::{FeatureVector, WeightVector};

/// A problem whose entire feasible set is an explicit table of feature vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularProblem {
    rows: Vec<FeatureVector>,
}

impl TabularProblem {
    pub fn new(rows: Vec<FeatureVector>) -> Result<Self, ProblemError> {
        let first = rows
            .first()
            .ok_or_else(|| ProblemError::Validation("tabular problem has no rows".into()))?;
        let n = first.dimension();
        if n < 2 {
            return Err(ProblemError::Validation(format!("need at least 2 objectives, got {n}")));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.dimension() != n {
                return Err(ProblemError::Validation(format!(
                    "row {i} has {} objectives, expected {n}",
                    r.dimension()
                )));
            }
            if !r.is_finite() {
                return Err(ProblemError::Validation(format!("row {i} is not finite")));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[FeatureVector] {
        &self.rows
    }

    pub fn dimension(&self) -> usize {
        self.rows[0].dimension()
    }

    /// Largest Euclidean norm among the rows; a Lipschitz constant for `u`.
    pub fn lipschitz(&self) -> f64 {
        self.rows.iter().map(FeatureVector::norm).fold(0.0, f64::max)
    }
}

impl Solver for TabularProblem {
    fn dimension(&self) -> usize {
        TabularProblem::dimension(self)
    }

    fn solve(&self, w: &WeightVector) -> Result<Sample, SolverError> {
        if w.dimension() != self.dimension() {
            return Err(SolverError::DimensionMismatch {
                expected: self.dimension(),
                found: w.dimension(),
            });
        }
        let (index, _) = argmin_cost(w, &self.rows).expect("nonempty by construction");
        Ok(Sample::new(w.clone(), self.rows[index].clone(), Solution::Index(index)))
    }
}
