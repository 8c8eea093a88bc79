use super::{Method, SamplerError, SamplerReport};
use crate::neighborhood::{is_neighborhood, Neighborhood, NeighborhoodError};
use crate::problems::{solve_checked, Solver};
use crate::sample::{Sample, SampleSet};
use crate::weight::WeightVector;

/// What one call to [`MrpsSampler::step`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Every live bound is already 0.
    Converged,
    /// The witness was new: it was solved, added to Ω, and the neighborhood split.
    Added { index: usize, children: usize },
    /// The witness matched an earlier sample, which was reused for the split.
    Reused { index: usize, children: usize },
    /// The witness coincided with a vertex; the neighborhood was retired with bound 0.
    Retired,
}

#[derive(Debug, Clone)]
struct Live {
    id: usize,
    neighborhood: Neighborhood,
}

/// The sampler state: Ω, the live partition of the simplex, and bookkeeping.
///
/// Each step pops the live neighborhood with the largest bound (earliest
/// created on ties), solves its witness and replaces it with its children.
pub struct MrpsSampler<'a, S: Solver + ?Sized> {
    solver: &'a S,
    omega: SampleSet,
    live: Vec<Live>,
    next_id: usize,
    solver_calls: usize,
    iterations: usize,
    per_iteration_bounds: Vec<f64>,
}

impl<'a, S: Solver + ?Sized> MrpsSampler<'a, S> {
    /// Solves the `n` basis weights and forms the initial neighborhood (the whole simplex).
    pub fn new(solver: &'a S) -> Result<Self, SamplerError> {
        let n = solver.dimension();
        if n < 2 {
            return Err(SamplerError::DimensionTooSmall(n));
        }
        let mut omega = SampleSet::new(n);
        for i in 0..n {
            omega.insert(solve_checked(solver, &WeightVector::basis(n, i))?)?;
        }
        let refs: Vec<&Sample> = omega.iter().collect();
        let root = Neighborhood::from_samples(&refs)?;
        let mut sampler = Self {
            solver,
            omega,
            live: vec![Live {
                id: 0,
                neighborhood: root,
            }],
            next_id: 1,
            solver_calls: n,
            iterations: 0,
            per_iteration_bounds: Vec::new(),
        };
        sampler.per_iteration_bounds.push(sampler.certified_bound());
        Ok(sampler)
    }

    pub fn omega(&self) -> &SampleSet {
        &self.omega
    }

    pub fn live_neighborhoods(&self) -> impl Iterator<Item = &Neighborhood> {
        self.live.iter().map(|l| &l.neighborhood)
    }

    /// Largest bound over the live partition; an upper bound on the max regret given Ω.
    pub fn certified_bound(&self) -> f64 {
        self.live.iter().map(|l| l.neighborhood.bound()).fold(0.0, f64::max)
    }

    pub fn solver_calls(&self) -> usize {
        self.solver_calls
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    fn worst(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, l) in self.live.iter().enumerate() {
            let b = l.neighborhood.bound();
            if b <= 0.0 {
                continue;
            }
            best = match best {
                Some(j) => {
                    let o = &self.live[j];
                    let bo = o.neighborhood.bound();
                    if b > bo || (b == bo && l.id < o.id) {
                        Some(i)
                    } else {
                        Some(j)
                    }
                }
                None => Some(i),
            };
        }
        best
    }

    pub fn step(&mut self) -> Result<Step, SamplerError> {
        let Some(pos) = self.worst() else {
            return Ok(Step::Converged);
        };
        self.iterations += 1;
        let witness = self.live[pos].neighborhood.witness().clone();

        let outcome = if self.live[pos]
            .neighborhood
            .vertices()
            .iter()
            .any(|v| v.approx_eq(&witness))
        {
            self.live[pos].neighborhood.retire();
            Step::Retired
        } else {
            let (index, added) = match self.omega.find(&witness) {
                Some(i) => (i, false),
                None => {
                    let sample = solve_checked(self.solver, &witness)?;
                    self.solver_calls += 1;
                    (self.omega.insert(sample)?, true)
                }
            };
            let parent = self.live.remove(pos);
            let children = split_neighborhood(&parent.neighborhood, self.omega.get(index))?;
            let count = children.len();
            for c in children {
                self.live.push(Live {
                    id: self.next_id,
                    neighborhood: c,
                });
                self.next_id += 1;
            }
            if added {
                Step::Added { index, children: count }
            } else {
                Step::Reused { index, children: count }
            }
        };
        self.per_iteration_bounds.push(self.certified_bound());
        Ok(outcome)
    }

    /// Steps until Ω holds `budget` samples or every bound is 0.
    pub fn run_to_budget(&mut self, budget: usize) -> Result<(), SamplerError> {
        let cap = self.iteration_cap(budget);
        while self.omega.len() < budget && self.certified_bound() > 0.0 {
            if self.iterations >= cap {
                return Err(SamplerError::IterationLimit(cap));
            }
            self.step()?;
        }
        Ok(())
    }

    /// Steps until the certified bound is at most `r_max` or Ω reaches `hard_cap`.
    /// Returns whether the tolerance was met.
    pub fn run_to_tolerance(&mut self, r_max: f64, hard_cap: usize) -> Result<bool, SamplerError> {
        let cap = self.iteration_cap(hard_cap);
        while self.certified_bound() > r_max && self.omega.len() < hard_cap {
            if self.iterations >= cap {
                return Err(SamplerError::IterationLimit(cap));
            }
            self.step()?;
        }
        Ok(self.certified_bound() <= r_max)
    }

    // Retire and reuse steps add no sample; each is bounded by the live set size,
    // so this is far above anything a healthy run needs.
    fn iteration_cap(&self, budget: usize) -> usize {
        self.iterations + 64 * budget.max(1) * self.solver.dimension() + 1000
    }

    pub fn into_report(self) -> SamplerReport {
        let certified_bound = Some(self.certified_bound());
        SamplerReport {
            method: Method::Mrps,
            omega: self.omega,
            certified_bound,
            solver_calls: self.solver_calls,
            per_iteration_bounds: self.per_iteration_bounds,
            seed: None,
            converged: None,
        }
    }
}

/// Runs the min-regret sampler until `|Ω| = budget` or the certified bound is 0.
pub fn mrps_sample<S: Solver + ?Sized>(solver: &S, budget: usize) -> Result<SamplerReport, SamplerError> {
    let n = solver.dimension();
    if budget < n {
        return Err(SamplerError::BudgetTooSmall { budget, dimension: n });
    }
    let mut sampler = MrpsSampler::new(solver)?;
    sampler.run_to_budget(budget)?;
    Ok(sampler.into_report())
}

/// Runs the sampler until the certified bound is at most `r_max`, or `|Ω|`
/// reaches `hard_cap`; `converged` records which.
pub fn mrps_sample_to_tolerance<S: Solver + ?Sized>(
    solver: &S,
    r_max: f64,
    hard_cap: usize,
) -> Result<SamplerReport, SamplerError> {
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(SamplerError::InvalidTolerance(r_max));
    }
    let n = solver.dimension();
    if hard_cap < n {
        return Err(SamplerError::BudgetTooSmall {
            budget: hard_cap,
            dimension: n,
        });
    }
    let mut sampler = MrpsSampler::new(solver)?;
    let converged = sampler.run_to_tolerance(r_max, hard_cap)?;
    let mut report = sampler.into_report();
    report.converged = Some(converged);
    Ok(report)
}

/// Children of `parent` formed by substituting the witness sample for each vertex.
///
/// Linearly dependent children and children identical to the parent are dropped,
/// so the returned hulls partition the parent's hull.
pub fn split_neighborhood(parent: &Neighborhood, witness: &Sample) -> Result<Vec<Neighborhood>, SamplerError> {
    if !parent.contains(&witness.weight) {
        return Err(NeighborhoodError::WitnessOutsideHull.into());
    }
    let mut children = Vec::new();
    for i in 0..parent.dimension() {
        if parent.vertices()[i].approx_eq(&witness.weight) {
            continue;
        }
        let mut vertices = parent.vertices().to_vec();
        let mut costs = parent.vertex_costs().to_vec();
        let mut features = parent.vertex_features().to_vec();
        vertices[i] = witness.weight.clone();
        costs[i] = witness.cost;
        features[i] = witness.features.clone();
        if !is_neighborhood(&vertices) {
            continue;
        }
        children.push(Neighborhood::new(vertices, costs, features)?);
    }
    Ok(children)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::TabularProblem;
    use crate::sample::Solution;

    fn t1() -> TabularProblem {
        TabularProblem::new(vec![
            vec![1.0, 4.0].into(),
            vec![4.0, 1.0].into(),
            vec![2.0, 2.0].into(),
        ])
        .unwrap()
    }

    fn weights(r: &SamplerReport) -> Vec<Vec<f64>> {
        r.omega.iter().map(|s| s.weight.as_slice().to_vec()).collect()
    }

    #[test]
    fn t1_budget_three() {
        let r = mrps_sample(&t1(), 3).unwrap();
        assert_eq!(weights(&r), vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]]);
        assert!((r.certified_bound.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.solver_calls, 3);
        assert!((r.per_iteration_bounds[0] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn t1_budget_five_reaches_zero() {
        let r = mrps_sample(&t1(), 5).unwrap();
        assert_eq!(r.certified_bound, Some(0.0));
        assert!(r.omega.len() <= 5);
        let mut seen: Vec<usize> = r
            .omega
            .iter()
            .map(|s| match s.solution {
                Solution::Index(i) => i,
                _ => unreachable!(),
            })
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen, vec![0, 1, 2]);
    }

    #[test]
    fn single_solution_stops_at_basis() {
        let p = TabularProblem::new(vec![vec![3.0, 5.0].into()]).unwrap();
        let r = mrps_sample(&p, 10).unwrap();
        assert_eq!(r.omega.len(), 2);
        assert_eq!(r.certified_bound, Some(0.0));
        assert_eq!(r.per_iteration_bounds, vec![0.0]);
    }

    #[test]
    fn tolerance_variant() {
        let r = mrps_sample_to_tolerance(&t1(), 0.5, 100).unwrap();
        assert_eq!(r.omega.len(), 3);
        assert_eq!(r.converged, Some(true));
        assert!(r.certified_bound.unwrap() <= 0.5);

        let r = mrps_sample_to_tolerance(&t1(), 2.0, 100).unwrap();
        assert_eq!(r.omega.len(), 2);
        assert!((r.certified_bound.unwrap() - 1.5).abs() < 1e-12);

        let r = mrps_sample_to_tolerance(&t1(), 0.1, 2).unwrap();
        assert_eq!(r.converged, Some(false));
        assert!(mrps_sample_to_tolerance(&t1(), 0.0, 10).is_err());
    }

    #[test]
    fn budget_too_small() {
        assert!(matches!(
            mrps_sample(&t1(), 1),
            Err(SamplerError::BudgetTooSmall { .. })
        ));
    }

    fn sample_at(p: &TabularProblem, w: &[f64]) -> Sample {
        p.solve(&WeightVector::normalize(w).unwrap()).unwrap()
    }

    fn root(p: &TabularProblem, n: usize) -> Neighborhood {
        let basis: Vec<Sample> = (0..n).map(|i| p.solve(&WeightVector::basis(n, i)).unwrap()).collect();
        Neighborhood::from_samples(&basis.iter().collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn split_segment_in_two() {
        let p = t1();
        let kids = split_neighborhood(&root(&p, 2), &sample_at(&p, &[0.5, 0.5])).unwrap();
        assert_eq!(kids.len(), 2);
        assert_eq!(kids[0].vertices()[0].as_slice(), &[0.5, 0.5]);
        assert_eq!(kids[0].vertices()[1].as_slice(), &[0.0, 1.0]);
        assert_eq!(kids[1].vertices()[0].as_slice(), &[1.0, 0.0]);
        assert_eq!(kids[1].vertices()[1].as_slice(), &[0.5, 0.5]);
    }

    #[test]
    fn split_at_vertex_gives_nothing() {
        let p = t1();
        let kids = split_neighborhood(&root(&p, 2), &sample_at(&p, &[1.0, 0.0])).unwrap();
        assert!(kids.is_empty());
    }

    #[test]
    fn split_triangle_partitions_hull() {
        use rand::{Rng, SeedableRng};
        let p = TabularProblem::new(vec![
            vec![1.0, 5.0, 6.0].into(),
            vec![4.0, 1.0, 7.0].into(),
            vec![5.0, 6.0, 2.0].into(),
        ])
        .unwrap();
        let parent = root(&p, 3);
        let kids = split_neighborhood(&parent, &sample_at(&p, &[1.0, 1.0, 1.0])).unwrap();
        assert_eq!(kids.len(), 3);
        let total: f64 = kids.iter().map(Neighborhood::relative_volume).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let raw: Vec<f64> = (0..3).map(|_| -rng.random::<f64>().ln()).collect();
            let w = WeightVector::normalize(&raw).unwrap();
            let inside = kids.iter().filter(|k| k.contains(&w)).count();
            assert_eq!(inside, 1, "{w:?}");
        }
    }
}
