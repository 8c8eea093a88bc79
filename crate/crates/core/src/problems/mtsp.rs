//! Multiple traveling salesmen sharing a depot, with objectives
//! `[total tour length, longest tour length]`.
//!
//! The solver enumerates every partition of the non-depot vertices into at
//! most `m` groups (robots are interchangeable), prices each group with an
//! exact Held–Karp tour, and keeps the Pareto-optimal partitions. Solving for
//! a weight is then an argmin over that list.

use serde::{Deserialize, Serialize};

use super::{argmin_cost, MtspSpec, ProblemError, Solver, SolverError};
use crate::sample::{Sample, Solution};
use crate::weight::{FeatureVector, WeightVector};

pub const MAX_CITIES: usize = 10;
pub const MAX_ROBOTS: usize = 4;

/// One closed tour per robot, listed without the depot; idle robots have empty tours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MtspSolution {
    pub tours: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct MtspProblem {
    distances: Vec<Vec<f64>>,
    robots: usize,
    depot: usize,
    candidates: Vec<(FeatureVector, MtspSolution)>,
}

fn invalid(msg: impl Into<String>) -> ProblemError {
    ProblemError::Validation(msg.into())
}

impl MtspProblem {
    /// Euclidean distances between `coords`.
    pub fn from_coords(coords: &[[f64; 2]], robots: usize, depot: usize) -> Result<Self, ProblemError> {
        if coords.iter().flatten().any(|v| !v.is_finite()) {
            return Err(invalid("coordinates must be finite"));
        }
        let matrix = coords
            .iter()
            .map(|a| coords.iter().map(|b| (a[0] - b[0]).hypot(a[1] - b[1])).collect())
            .collect();
        Self::from_matrix(matrix, robots, depot)
    }

    pub fn from_matrix(distances: Vec<Vec<f64>>, robots: usize, depot: usize) -> Result<Self, ProblemError> {
        let v = distances.len();
        if v == 0 {
            return Err(invalid("graph has no vertices"));
        }
        if depot >= v {
            return Err(invalid(format!("depot {depot} out of range for {v} vertices")));
        }
        if robots == 0 {
            return Err(invalid("robots must be at least 1"));
        }
        for (i, row) in distances.iter().enumerate() {
            if row.len() != v {
                return Err(invalid(format!("row {i} has {} entries, expected {v}", row.len())));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(invalid(format!("cost ({i},{j}) must be finite and nonnegative")));
                }
                if i == j && d != 0.0 {
                    return Err(invalid(format!("diagonal entry {i} must be 0")));
                }
                let back = distances[j][i];
                if (d - back).abs() > 1e-9 * d.abs().max(1.0) {
                    return Err(invalid(format!("cost matrix not symmetric at ({i},{j})")));
                }
            }
        }
        if v - 1 > MAX_CITIES {
            return Err(ProblemError::InstanceTooLarge(format!(
                "{} non-depot vertices, limit {MAX_CITIES}",
                v - 1
            )));
        }
        if robots > MAX_ROBOTS {
            return Err(ProblemError::InstanceTooLarge(format!(
                "{robots} robots, limit {MAX_ROBOTS}"
            )));
        }
        let candidates = enumerate(&distances, robots, depot);
        Ok(Self {
            distances,
            robots,
            depot,
            candidates,
        })
    }

    pub fn from_spec(spec: &MtspSpec) -> Result<Self, ProblemError> {
        match (&spec.coords, &spec.matrix) {
            (Some(c), None) => Self::from_coords(c, spec.robots, spec.depot),
            (None, Some(m)) => Self::from_matrix(m.clone(), spec.robots, spec.depot),
            _ => Err(invalid("exactly one of coords or matrix is required")),
        }
    }

    pub fn dimension(&self) -> usize {
        2
    }

    pub fn robots(&self) -> usize {
        self.robots
    }

    pub fn depot(&self) -> usize {
        self.depot
    }

    pub fn distances(&self) -> &[Vec<f64>] {
        &self.distances
    }

    /// Length of a closed tour from the depot through `tour` and back.
    pub fn tour_cost(&self, tour: &[usize]) -> f64 {
        let mut prev = self.depot;
        let mut total = 0.0;
        for &c in tour {
            total += self.distances[prev][c];
            prev = c;
        }
        total + self.distances[prev][self.depot]
    }

    /// Pareto-optimal `[sum, max]` feature vectors with their tours.
    pub fn candidates(&self) -> &[(FeatureVector, MtspSolution)] {
        &self.candidates
    }
}

impl Solver for MtspProblem {
    fn dimension(&self) -> usize {
        2
    }

    fn solve(&self, w: &WeightVector) -> Result<Sample, SolverError> {
        if w.dimension() != 2 {
            return Err(SolverError::DimensionMismatch {
                expected: 2,
                found: w.dimension(),
            });
        }
        let (i, _) = argmin_cost(w, self.candidates.iter().map(|(f, _)| f)).expect("at least one partition");
        let (f, sol) = &self.candidates[i];
        Ok(Sample::new(w.clone(), f.clone(), Solution::Mtsp(sol.clone())))
    }
}

/// Optimal closed-tour cost and visiting order for every subset of `cities`.
struct HeldKarp {
    cost: Vec<f64>,
    // best[mask][j]: cheapest depot→…→cities[j] path covering mask; parent for reconstruction
    best: Vec<Vec<f64>>,
    parent: Vec<Vec<usize>>,
    last: Vec<usize>,
}

impl HeldKarp {
    fn new(d: &[Vec<f64>], depot: usize, cities: &[usize]) -> Self {
        let c = cities.len();
        let full = 1usize << c;
        let mut best = vec![vec![f64::INFINITY; c]; full];
        let mut parent = vec![vec![usize::MAX; c]; full];
        for j in 0..c {
            best[1 << j][j] = d[depot][cities[j]];
        }
        for mask in 1..full {
            for j in 0..c {
                if mask & (1 << j) == 0 || !best[mask][j].is_finite() {
                    continue;
                }
                let here = best[mask][j];
                for k in 0..c {
                    if mask & (1 << k) != 0 {
                        continue;
                    }
                    let next = mask | (1 << k);
                    let v = here + d[cities[j]][cities[k]];
                    if v < best[next][k] {
                        best[next][k] = v;
                        parent[next][k] = j;
                    }
                }
            }
        }
        let mut cost = vec![0.0; full];
        let mut last = vec![usize::MAX; full];
        for mask in 1..full {
            let mut b = f64::INFINITY;
            for j in 0..c {
                if mask & (1 << j) != 0 {
                    let v = best[mask][j] + d[cities[j]][depot];
                    if v < b {
                        b = v;
                        last[mask] = j;
                    }
                }
            }
            cost[mask] = b;
        }
        Self {
            cost,
            best,
            parent,
            last,
        }
    }

    fn tour(&self, mask: usize, cities: &[usize]) -> Vec<usize> {
        let mut order = Vec::new();
        let mut m = mask;
        let mut j = self.last[mask];
        while m != 0 {
            debug_assert!(self.best[m][j].is_finite());
            order.push(cities[j]);
            let p = self.parent[m][j];
            m &= !(1 << j);
            j = p;
        }
        order.reverse();
        order
    }
}

fn enumerate(d: &[Vec<f64>], robots: usize, depot: usize) -> Vec<(FeatureVector, MtspSolution)> {
    let cities: Vec<usize> = (0..d.len()).filter(|&v| v != depot).collect();
    let hk = HeldKarp::new(d, depot, &cities);

    // restricted growth strings: city i joins an existing block or opens the next one
    let mut partitions: Vec<Vec<usize>> = Vec::new();
    let mut masks = vec![0usize; robots];
    fn grow(i: usize, used: usize, n: usize, masks: &mut [usize], out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(masks.to_vec());
            return;
        }
        let open = (used + 1).min(masks.len());
        for b in 0..open {
            masks[b] |= 1 << i;
            grow(i + 1, used.max(b + 1), n, masks, out);
            masks[b] &= !(1 << i);
        }
    }
    grow(0, 0, cities.len(), &mut masks, &mut partitions);

    let mut front: Vec<(FeatureVector, Vec<usize>)> = Vec::new();
    for p in partitions {
        let costs = p.iter().map(|&m| hk.cost[m]);
        let sum: f64 = costs.clone().sum();
        let max = costs.fold(0.0, f64::max);
        let dominated = front.iter().any(|(f, _)| f[0] <= sum && f[1] <= max);
        if dominated {
            continue;
        }
        front.retain(|(f, _)| !(sum <= f[0] && max <= f[1]));
        front.push((FeatureVector::new(vec![sum, max]), p));
    }
    front
        .into_iter()
        .map(|(f, p)| {
            let tours = p
                .iter()
                .map(|&m| if m == 0 { Vec::new() } else { hk.tour(m, &cities) })
                .collect();
            (f, MtspSolution { tours })
        })
        .collect()
}
