use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::weight::FeatureVector;

/// Mutually non-dominated 2-D points (minimization), first objective ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoFront2D {
    pub points: Vec<FeatureVector>,
}

pub fn pareto_front_2d(points: &[FeatureVector]) -> Result<ParetoFront2D, MetricsError> {
    if let Some(p) = points.iter().find(|p| p.dimension() != 2) {
        return Err(MetricsError::Dimension {
            expected: 2,
            found: p.dimension(),
        });
    }
    let mut sorted: Vec<&FeatureVector> = points.iter().collect();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut front: Vec<FeatureVector> = Vec::new();
    for p in sorted {
        if front.last().is_none_or(|q| p[1] < q[1]) {
            front.push(p.clone());
        }
    }
    Ok(ParetoFront2D { points: front })
}

/// Component-wise maximum of `points`, pushed outward by 10% of its magnitude.
pub fn default_reference(points: &[FeatureVector]) -> Option<FeatureVector> {
    let n = points.first()?.dimension();
    let v = (0..n)
        .map(|j| {
            let m = points.iter().map(|p| p[j]).fold(f64::NEG_INFINITY, f64::max);
            m + 0.1 * m.abs()
        })
        .collect();
    Some(FeatureVector::new(v))
}

fn check(points: &[FeatureVector], reference: &FeatureVector) -> Result<(), MetricsError> {
    let n = reference.dimension();
    for (index, p) in points.iter().enumerate() {
        if p.dimension() != n {
            return Err(MetricsError::Dimension {
                expected: n,
                found: p.dimension(),
            });
        }
        if p.as_slice().iter().zip(reference.as_slice()).any(|(a, r)| a > r) {
            return Err(MetricsError::BadReference { index });
        }
    }
    Ok(())
}

/// Volume dominated by `points` inside the box below `reference`.
///
/// Exact for two objectives; otherwise a seeded Monte Carlo estimate from `mc_samples` draws.
pub fn hypervolume(
    points: &[FeatureVector],
    reference: &FeatureVector,
    mc_samples: usize,
    seed: u64,
) -> Result<f64, MetricsError> {
    check(points, reference)?;
    if reference.dimension() == 2 {
        let front = pareto_front_2d(points)?;
        let mut area = 0.0;
        for (i, p) in front.points.iter().enumerate() {
            let next_x = front.points.get(i + 1).map_or(reference[0], |q| q[0]);
            area += (next_x - p[0]) * (reference[1] - p[1]);
        }
        Ok(area)
    } else {
        Ok(hypervolume_monte_carlo(points, reference, mc_samples, seed)?.0)
    }
}

/// Monte Carlo hypervolume in any dimension: `(estimate, standard error)`.
pub fn hypervolume_monte_carlo(
    points: &[FeatureVector],
    reference: &FeatureVector,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64), MetricsError> {
    check(points, reference)?;
    if points.is_empty() || samples == 0 {
        return Ok((0.0, 0.0));
    }
    let n = reference.dimension();
    let lo: Vec<f64> = (0..n)
        .map(|j| points.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let volume: f64 = (0..n).map(|j| reference[j] - lo[j]).product();
    if volume <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n];
    let mut hits = 0usize;
    for _ in 0..samples {
        for (j, xj) in x.iter_mut().enumerate() {
            *xj = lo[j] + rng.random::<f64>() * (reference[j] - lo[j]);
        }
        if points.iter().any(|p| p.as_slice().iter().zip(&x).all(|(a, b)| a <= b)) {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    let stderr = volume * (frac * (1.0 - frac) / samples as f64).sqrt();
    Ok((volume * frac, stderr))
}

/// `HV(dense) − HV(approx)` under a shared reference; how much of a dense
/// reference front the approximation misses.
pub fn hypervolume_gap(
    approx: &[FeatureVector],
    dense: &[FeatureVector],
    reference: &FeatureVector,
    mc_samples: usize,
    seed: u64,
) -> Result<f64, MetricsError> {
    Ok(hypervolume(dense, reference, mc_samples, seed)? - hypervolume(approx, reference, mc_samples, seed)?)
}
