//! Two-phase primal simplex on a dense tableau, Bland's rule throughout.

use super::{LinearProgram, LpError, LpSolution, LpStatus};

const PIVOT_EPS: f64 = 1e-10;
const MAX_PIVOTS: usize = 100_000;

/// How an original variable maps onto nonnegative tableau columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = lower + y`
    Shifted { col: usize, lower: f64 },
    /// `x = y⁺ - y⁻`
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// `(rows + 1) x (cols + 1)`; last row is the objective row, last column the rhs.
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.cols + 1) + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let p = self.at(r, c);
        for j in 0..w {
            self.data[r * w + j] /= p;
        }
        for i in 0..=self.rows {
            if i == r {
                continue;
            }
            let factor = self.at(i, c);
            if factor != 0.0 {
                for j in 0..w {
                    let v = self.data[r * w + j];
                    self.data[i * w + j] -= factor * v;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Sets the objective row for `maximize cost · z`, priced out against the basis.
    fn set_objective(&mut self, cost: &[f64]) {
        let m = self.rows;
        for j in 0..=self.cols {
            let mut v = if j < self.cols { -cost[j] } else { 0.0 };
            for i in 0..m {
                v += cost[self.basis[i]] * self.at(i, j);
            }
            *self.at_mut(m, j) = v;
        }
    }

    /// Runs simplex iterations over the columns allowed by `eligible`.
    /// Returns `false` if the objective is unbounded.
    fn optimize(&mut self, eligible: &dyn Fn(usize) -> bool) -> Result<bool, LpError> {
        for _ in 0..MAX_PIVOTS {
            let m = self.rows;
            let entering = (0..self.cols).find(|&j| eligible(j) && self.at(m, j) < -PIVOT_EPS);
            let Some(c) = entering else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.at(i, c);
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            // near-ties go to the larger pivot, then the lower basis index
                            let la = self.at(li, c);
                            if ratio < lr - PIVOT_EPS
                                || (ratio <= lr + PIVOT_EPS
                                    && (a > 10.0 * la || (a * 10.0 >= la && self.basis[i] < self.basis[li])))
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Ok(false);
            };
            self.pivot(r, c);
        }
        Err(LpError::IterationLimit(MAX_PIVOTS))
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.cols + 1;
        self.data.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.rows -= 1;
    }
}

/// Solves `lp` with a two-phase primal simplex using Bland's anti-cycling rule.
///
/// Deterministic for identical input.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let n = lp.num_vars();

    let mut maps = Vec::with_capacity(n);
    let mut ny = 0;
    for bound in &lp.lower_bounds {
        match bound {
            Some(lower) => {
                maps.push(VarMap::Shifted { col: ny, lower: *lower });
                ny += 1;
            }
            None => {
                maps.push(VarMap::Split { pos: ny, neg: ny + 1 });
                ny += 2;
            }
        }
    }

    // Expand an original row into structural columns and shift its rhs.
    let expand = |row: &[f64], rhs: f64| -> (Vec<f64>, f64) {
        let mut out = vec![0.0; ny];
        let mut b = rhs;
        for (j, map) in maps.iter().enumerate() {
            match *map {
                VarMap::Shifted { col, lower } => {
                    out[col] = row[j];
                    b -= row[j] * lower;
                }
                VarMap::Split { pos, neg } => {
                    out[pos] = row[j];
                    out[neg] = -row[j];
                }
            }
        }
        (out, b)
    };

    let n_eq = lp.equality_rows.len();
    let n_ge = lp.inequality_rows.len();
    let m = n_eq + n_ge;
    let slack0 = ny;
    let art0 = ny + n_ge;
    let cols = art0 + m;

    let mut t = Tableau {
        rows: m,
        cols,
        data: vec![0.0; (m + 1) * (cols + 1)],
        basis: (art0..art0 + m).collect(),
    };
    let rows = lp
        .equality_rows
        .iter()
        .zip(&lp.equality_rhs)
        .map(|(r, &b)| (r, b, None))
        .chain(
            lp.inequality_rows
                .iter()
                .zip(&lp.inequality_rhs)
                .enumerate()
                .map(|(k, (r, &b))| (r, b, Some(slack0 + k))),
        );
    for (i, (row, rhs, slack)) in rows.enumerate() {
        let (coeffs, b) = expand(row, rhs);
        let sign = if b < 0.0 { -1.0 } else { 1.0 };
        for (j, v) in coeffs.into_iter().enumerate() {
            *t.at_mut(i, j) = sign * v;
        }
        if let Some(s) = slack {
            *t.at_mut(i, s) = -sign;
        }
        *t.at_mut(i, art0 + i) = 1.0;
        *t.at_mut(i, cols) = sign * b;
    }

    // Phase 1: maximize -Σ artificials.
    let mut phase1_cost = vec![0.0; cols];
    for c in phase1_cost.iter_mut().skip(art0) {
        *c = -1.0;
    }
    t.set_objective(&phase1_cost);
    t.optimize(&|_| true)?;
    let scale = 1.0 + (0..t.rows).map(|i| t.rhs(i).abs()).fold(0.0, f64::max);
    if -t.at(t.rows, cols) > 1e-9 * scale {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            variables: vec![],
            objective_value: f64::NAN,
        });
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows {
        if t.basis[i] >= art0 {
            match (0..art0).find(|&j| t.at(i, j).abs() > 1e-9) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => t.remove_row(i),
            }
        } else {
            i += 1;
        }
    }

    // Phase 2 on the real objective; artificial columns may not re-enter.
    let mut cost = vec![0.0; cols];
    for (j, map) in maps.iter().enumerate() {
        match *map {
            VarMap::Shifted { col, .. } => cost[col] = lp.objective[j],
            VarMap::Split { pos, neg } => {
                cost[pos] = lp.objective[j];
                cost[neg] = -lp.objective[j];
            }
        }
    }
    t.set_objective(&cost);
    if !t.optimize(&|j| j < art0)? {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            variables: vec![],
            objective_value: f64::INFINITY,
        });
    }

    let mut y = vec![0.0; cols];
    for (r, &b) in t.basis.iter().enumerate() {
        y[b] = t.rhs(r);
    }
    let variables: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Shifted { col, lower } => lower + y[col],
            VarMap::Split { pos, neg } => y[pos] - y[neg],
        })
        .collect();
    let objective_value = lp.objective.iter().zip(&variables).map(|(c, x)| c * x).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        variables,
        objective_value,
    })
}
