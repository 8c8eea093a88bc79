use proptest::prelude::*;

use mrps::lp::max_min_neighborhood_regret;
use mrps::metrics::hypervolume;
use mrps::neighborhood::{barycentric_coordinates, is_neighborhood, Neighborhood};
use mrps::problems::{Solver, TabularProblem};
use mrps::sampler::{mrps_sample, MrpsSampler};
use mrps::weight::{grid_size, simplex_grid, FeatureVector, WeightVector};

fn weight(n: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(|v| WeightVector::normalize(&v).unwrap())
}

fn table(n: usize) -> impl Strategy<Value = TabularProblem> {
    prop::collection::vec(prop::collection::vec(0.0f64..10.0, n), 2..12)
        .prop_map(|rows| TabularProblem::new(rows.into_iter().map(FeatureVector::new).collect()).unwrap())
}

fn problem_and_vertices() -> impl Strategy<Value = (TabularProblem, Vec<WeightVector>)> {
    (2usize..=4).prop_flat_map(|n| (table(n), prop::collection::vec(weight(n), n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn barycentric_inverts_combination(
        vertices in (2usize..=4).prop_flat_map(|n| prop::collection::vec(weight(n), n)),
        raw in prop::collection::vec(0.0f64..1.0, 4),
    ) {
        prop_assume!(is_neighborhood(&vertices));
        let n = vertices.len();
        let total: f64 = raw[..n].iter().sum();
        prop_assume!(total > 1e-3);
        let lambda: Vec<f64> = raw[..n].iter().map(|l| l / total).collect();
        let w: Vec<f64> = (0..n).map(|j| (0..n).map(|i| lambda[i] * vertices[i][j]).sum()).collect();
        let w = WeightVector::normalize(&w).unwrap();
        let back = barycentric_coordinates(&w, &vertices).unwrap();
        for (a, b) in back.iter().zip(&lambda) {
            prop_assert!((a - b).abs() < 1e-6, "{back:?} vs {lambda:?}");
        }
    }

    #[test]
    fn interpolant_stays_below_optimal_cost(
        (p, vertices) in problem_and_vertices(),
        raw in prop::collection::vec(0.0f64..1.0, 4),
    ) {
        prop_assume!(is_neighborhood(&vertices));
        let n = vertices.len();
        let samples: Vec<_> = vertices.iter().map(|v| p.solve(v).unwrap()).collect();
        let refs: Vec<_> = samples.iter().collect();
        let nb = Neighborhood::from_samples(&refs).unwrap();
        let total: f64 = raw[..n].iter().sum();
        prop_assume!(total > 1e-3);
        let w: Vec<f64> = (0..n).map(|j| (0..n).map(|i| raw[i] / total * vertices[i][j]).sum()).collect();
        let w = WeightVector::normalize(&w).unwrap();
        let interp = nb.interpolate(&w).unwrap();
        prop_assert!(interp <= p.solve(&w).unwrap().cost + 1e-9);
    }

    #[test]
    fn bound_scales_with_features((p, vertices) in problem_and_vertices(), gamma in 0.1f64..10.0) {
        prop_assume!(is_neighborhood(&vertices));
        let samples: Vec<_> = vertices.iter().map(|v| p.solve(v).unwrap()).collect();
        let costs: Vec<f64> = samples.iter().map(|s| s.cost).collect();
        let feats: Vec<FeatureVector> = samples.iter().map(|s| s.features.clone()).collect();
        let (b1, w1) = max_min_neighborhood_regret(&vertices, &costs, &feats).unwrap();
        let scaled_costs: Vec<f64> = costs.iter().map(|c| c * gamma).collect();
        let scaled: Vec<FeatureVector> = feats.iter().map(|f| f.scaled(gamma)).collect();
        let (b2, w2) = max_min_neighborhood_regret(&vertices, &scaled_costs, &scaled).unwrap();
        prop_assert!((b2 - gamma * b1).abs() <= 1e-7 * (1.0 + gamma * b1));
        // a flat or near-flat maximum leaves the witness free to move
        if b1 > 1e-6 {
            prop_assert!(w1.distance(&w2) < 1e-7, "{w1:?} vs {w2:?}");
        }
    }

    #[test]
    fn solution_is_invariant_to_weight_scale(p in table(3), w in prop::collection::vec(0.01f64..1.0, 3), s in 0.01f64..100.0) {
        let a = p.solve(&WeightVector::normalize(&w).unwrap()).unwrap();
        let scaled: Vec<f64> = w.iter().map(|x| x * s).collect();
        let b = p.solve(&WeightVector::normalize(&scaled).unwrap()).unwrap();
        prop_assert_eq!(a.solution, b.solution);
    }

    #[test]
    fn sampling_is_deterministic(p in table(3), budget in 3usize..12) {
        let a = serde_json::to_string(&mrps_sample(&p, budget).unwrap()).unwrap();
        let b = serde_json::to_string(&mrps_sample(&p, budget).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn live_neighborhoods_partition_the_simplex(p in (2usize..=3).prop_flat_map(table), steps in 0usize..25) {
        let mut s = MrpsSampler::new(&p).unwrap();
        for _ in 0..steps {
            s.step().unwrap();
        }
        let volume: f64 = s.live_neighborhoods().map(Neighborhood::relative_volume).sum();
        prop_assert!((volume - 1.0).abs() < 1e-9, "{volume}");
    }

    #[test]
    fn hypervolume_grows_with_points(
        pts in prop::collection::vec((0.0f64..5.0, 0.0f64..5.0), 1..10),
        extra in (0.0f64..5.0, 0.0f64..5.0),
    ) {
        let reference: FeatureVector = vec![6.0, 6.0].into();
        let base: Vec<FeatureVector> = pts.iter().map(|&(a, b)| vec![a, b].into()).collect();
        let mut more = base.clone();
        more.push(vec![extra.0, extra.1].into());
        let h0 = hypervolume(&base, &reference, 0, 0).unwrap();
        let h1 = hypervolume(&more, &reference, 0, 0).unwrap();
        prop_assert!(h1 >= h0 - 1e-12);
    }
}

#[test]
fn grid_counts_and_sums() {
    for n in 2..=4 {
        for m in [1, 2, 5, 10] {
            let g = simplex_grid(n, m);
            assert_eq!(g.len(), grid_size(n, m));
            for w in &g {
                assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                for &c in w.iter() {
                    assert!((c * m as f64 - (c * m as f64).round()).abs() < 1e-9);
                }
            }
            for i in 1..g.len() {
                assert!(!g[i].approx_eq(&g[i - 1]));
            }
        }
    }
}
