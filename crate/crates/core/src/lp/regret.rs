//! The max-min regret bound of a neighborhood as a linear program.
//!
//! For vertices `w¹..wⁿ` with optimal costs `uᵢ` and features `fⁱ`, the bound is
//!
//! ```text
//! max  x - Σ λᵢ uᵢ
//! s.t. fⁱ · w - x ≥ 0          for every vertex i
//!      Σ wⱼ = 1,  Σ λᵢ = 1
//!      wⱼ = Σᵢ λᵢ wⁱⱼ          for every coordinate j
//!      w ≥ 0, λ ≥ 0, x free
//! ```
//!
//! `x` is the lowest tangent plane at `w` and `Σ λᵢ uᵢ` the linear interpolant
//! `P(w)`, so the optimum is the largest gap between them over the hull.

use super::{solve_lp, LinearProgram, LpError, LpStatus};
use crate::neighborhood::NeighborhoodError;
use crate::tolerance;
use crate::weight::{dot, FeatureVector, WeightVector};

/// Which assembly of the regret LP to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegretForm {
    /// Variables `(w, λ, x)` with explicit coupling rows `w = Σ λᵢ wⁱ`.
    Full,
    /// Variables `(λ, x)` only; `w` substituted out.
    Reduced,
}

/// Raw optimum of the regret LP (not clamped) and the maximizing weight.
pub fn neighborhood_regret_lp(
    form: RegretForm,
    vertices: &[WeightVector],
    costs: &[f64],
    features: &[FeatureVector],
) -> Result<(f64, WeightVector), NeighborhoodError> {
    let n = vertices.len();
    if costs.len() != n || features.len() != n {
        return Err(NeighborhoodError::VertexCount {
            dimension: n,
            count: costs.len().min(features.len()),
        });
    }
    // both forms carry λ; rebuilding w from it keeps the witness inside the hull
    let (lp, offset) = match form {
        RegretForm::Full => (full_form(vertices, costs, features), n),
        RegretForm::Reduced => (reduced_form(vertices, costs, features), 0),
    };
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(LpError::NotOptimal(sol.status).into());
    }
    let lambda: Vec<f64> = sol.variables[offset..offset + n].iter().map(|l| l.max(0.0)).collect();
    let mut w = vec![0.0; n];
    for (l, v) in lambda.iter().zip(vertices) {
        for (wj, vj) in w.iter_mut().zip(v.iter()) {
            *wj += l * vj;
        }
    }
    let witness = WeightVector::from_lp(&w).map_err(|_| NeighborhoodError::WitnessOutsideHull)?;
    Ok((sol.objective_value, witness))
}

/// `(R̄(N), w̄(N))` for the neighborhood with the given vertex data.
///
/// Negative values and values within `BOUND_ZERO` of zero (relative to the
/// feature scale) are reported as exactly 0.
pub fn max_min_neighborhood_regret(
    vertices: &[WeightVector],
    costs: &[f64],
    features: &[FeatureVector],
) -> Result<(f64, WeightVector), NeighborhoodError> {
    // the program is always feasible and bounded, so a failure is numerical; the
    // smaller form is better conditioned on thin neighborhoods
    let (raw, witness) = neighborhood_regret_lp(RegretForm::Full, vertices, costs, features)
        .or_else(|_| neighborhood_regret_lp(RegretForm::Reduced, vertices, costs, features))?;
    let scale = features.iter().map(FeatureVector::max_abs).fold(1.0, f64::max);
    let bound = if raw <= tolerance::BOUND_ZERO * scale { 0.0 } else { raw };
    Ok((bound, witness))
}

fn full_form(vertices: &[WeightVector], costs: &[f64], features: &[FeatureVector]) -> LinearProgram {
    let n = vertices.len();
    let nvars = 2 * n + 1;
    let x = 2 * n;

    let mut objective = vec![0.0; nvars];
    for (i, u) in costs.iter().enumerate() {
        objective[n + i] = -u;
    }
    objective[x] = 1.0;
    let mut lp = LinearProgram::maximize(objective).free(x);

    for f in features {
        let mut row = vec![0.0; nvars];
        row[..n].copy_from_slice(f.as_slice());
        row[x] = -1.0;
        lp = lp.ge(row, 0.0);
    }

    let mut sum_w = vec![0.0; nvars];
    sum_w[..n].fill(1.0);
    let mut sum_lambda = vec![0.0; nvars];
    sum_lambda[n..2 * n].fill(1.0);
    lp = lp.eq(sum_w, 1.0).eq(sum_lambda, 1.0);

    for j in 0..n {
        let mut row = vec![0.0; nvars];
        row[j] = -1.0;
        for (i, v) in vertices.iter().enumerate() {
            row[n + i] = v[j];
        }
        lp = lp.eq(row, 0.0);
    }
    lp
}

fn reduced_form(vertices: &[WeightVector], costs: &[f64], features: &[FeatureVector]) -> LinearProgram {
    let n = vertices.len();
    let x = n;

    let mut objective: Vec<f64> = costs.iter().map(|u| -u).collect();
    objective.push(1.0);
    let mut lp = LinearProgram::maximize(objective).free(x);

    for f in features {
        let mut row: Vec<f64> = vertices.iter().map(|v| dot(f.as_slice(), v.as_slice())).collect();
        row.push(-1.0);
        lp = lp.ge(row, 0.0);
    }
    let mut sum_lambda = vec![1.0; n];
    sum_lambda.push(0.0);
    lp.eq(sum_lambda, 1.0)
}
