//! Tiny dense linear algebra for n x n systems (n is the number of objectives).

/// Row-major square matrix.
#[derive(Debug, Clone)]
pub(crate) struct Square {
    n: usize,
    data: Vec<f64>,
}

impl Square {
    /// Builds the matrix whose *columns* are the given vectors.
    pub fn from_columns(columns: &[&[f64]]) -> Self {
        let n = columns.len();
        let mut data = vec![0.0; n * n];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n, "column {j} has wrong length");
            for (i, &v) in col.iter().enumerate() {
                data[i * n + j] = v;
            }
        }
        Self { n, data }
    }

    /// Smallest pivot magnitude met during Gaussian elimination with complete
    /// pivoting. Zero for an empty or singular matrix.
    pub fn min_pivot(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut smallest = f64::INFINITY;
        for k in 0..n {
            let (mut pr, mut pc, mut best) = (k, k, -1.0);
            for i in k..n {
                for j in k..n {
                    let v = a[i * n + j].abs();
                    if v > best {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            }
            smallest = smallest.min(best);
            if best == 0.0 {
                return 0.0;
            }
            if pr != k {
                for j in 0..n {
                    a.swap(k * n + j, pr * n + j);
                }
            }
            if pc != k {
                for i in 0..n {
                    a.swap(i * n + k, i * n + pc);
                }
            }
            let p = a[k * n + k];
            for i in k + 1..n {
                let factor = a[i * n + k] / p;
                if factor != 0.0 {
                    for j in k..n {
                        a[i * n + j] -= factor * a[k * n + j];
                    }
                }
            }
        }
        if n == 0 {
            0.0
        } else {
            smallest
        }
    }

    /// Solves `A x = b` by partial pivoting; `None` if a pivot falls below `tol`.
    pub fn solve(&self, b: &[f64], tol: f64) -> Option<Vec<f64>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut a = self.data.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let pr = (k..n)
                .max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs()))
                .unwrap();
            if a[pr * n + k].abs() <= tol {
                return None;
            }
            if pr != k {
                for j in 0..n {
                    a.swap(k * n + j, pr * n + j);
                }
                rhs.swap(k, pr);
            }
            let p = a[k * n + k];
            for i in k + 1..n {
                let factor = a[i * n + k] / p;
                if factor != 0.0 {
                    for j in k..n {
                        a[i * n + j] -= factor * a[k * n + j];
                    }
                    rhs[i] -= factor * rhs[k];
                }
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = rhs[i];
            for j in i + 1..n {
                acc -= a[i * n + j] * x[j];
            }
            x[i] = acc / a[i * n + i];
        }
        Some(x)
    }

    /// Absolute determinant by partially pivoted elimination.
    pub fn abs_det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let pr = (k..n)
                .max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs()))
                .unwrap();
            if a[pr * n + k] == 0.0 {
                return 0.0;
            }
            for j in 0..n {
                a.swap(k * n + j, pr * n + j);
            }
            det *= a[k * n + k];
            for i in k + 1..n {
                let factor = a[i * n + k] / a[k * n + k];
                for j in k..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
        det.abs()
    }
}
