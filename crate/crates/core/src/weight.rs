//! Points of the weight simplex and objective-space feature vectors.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("weight vectors need at least 2 components, got {0}")]
    TooShort(usize),
    #[error("every weight component is zero; the scalarized problem is trivial")]
    AllZero,
    #[error("weight component {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("weight component {index} is not finite")]
    NonFinite { index: usize },
    #[error("weight components sum to {0}, expected 1")]
    NotNormalized(f64),
}

/// A point on the probability simplex: nonnegative components summing to one.
///
/// Every constructor either normalizes or rejects, so a `WeightVector` in hand
/// always satisfies the simplex invariants.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Accepts components that already lie on the simplex (within tolerance).
    ///
    /// The components are renormalized so the stored sum is as close to 1 as
    /// floating point allows.
    pub fn new(components: Vec<f64>) -> Result<Self, WeightError> {
        check_entries(&components)?;
        let sum: f64 = components.iter().sum();
        if (sum - 1.0).abs() > tolerance::SUM {
            return Err(WeightError::NotNormalized(sum));
        }
        Ok(Self(components.into_iter().map(|c| c / sum).collect()))
    }

    /// Scales nonnegative raw weights onto the simplex.
    pub fn normalize(raw: &[f64]) -> Result<Self, WeightError> {
        check_entries(raw)?;
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Err(WeightError::AllZero);
        }
        Ok(Self(raw.iter().map(|c| c / sum).collect()))
    }

    /// The `i`-th canonical basis vector of dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(n >= 2 && i < n, "basis({n}, {i}) out of range");
        let mut c = vec![0.0; n];
        c[i] = 1.0;
        Self(c)
    }

    /// The barycenter `(1/n, ..., 1/n)`.
    pub fn barycenter(n: usize) -> Self {
        assert!(n >= 2);
        Self(vec![1.0 / n as f64; n])
    }

    /// Projects a nearly-feasible vector (e.g. an LP solution) onto the simplex
    /// by clipping tiny negatives and renormalizing.
    pub(crate) fn from_lp(components: &[f64]) -> Result<Self, WeightError> {
        let clipped: Vec<f64> = components.iter().map(|&c| c.max(0.0)).collect();
        Self::normalize(&clipped)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    /// Weighted sum `w · f`.
    pub fn dot(&self, features: &FeatureVector) -> f64 {
        dot(&self.0, &features.0)
    }

    pub fn distance(&self, other: &WeightVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn approx_eq(&self, other: &WeightVector) -> bool {
        self.dimension() == other.dimension() && self.distance(other) <= tolerance::DUPLICATE
    }

    /// Bit pattern of the components, usable as an exact hash key.
    pub fn key(&self) -> Vec<u64> {
        self.0.iter().map(|c| c.to_bits()).collect()
    }
}

fn check_entries(raw: &[f64]) -> Result<(), WeightError> {
    if raw.len() < 2 {
        return Err(WeightError::TooShort(raw.len()));
    }
    for (index, &value) in raw.iter().enumerate() {
        if !value.is_finite() {
            return Err(WeightError::NonFinite { index });
        }
        if value < 0.0 {
            return Err(WeightError::NegativeEntry { index, value });
        }
    }
    Ok(())
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = WeightError;

    fn try_from(value: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

impl Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.0)
    }
}

/// Objective values `f(s)` of one solution.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|v| v * factor).collect())
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl From<Vec<f64>> for FeatureVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

impl Index<usize> for FeatureVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for FeatureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{:?}", self.0)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All weights whose components are multiples of `1/resolution`, i.e. the
/// compositions of `resolution` into `n` nonnegative parts, in descending
/// lexicographic order of the integer parts.
///
/// The result has `C(resolution + n - 1, n - 1)` entries.
pub fn simplex_grid(n: usize, resolution: usize) -> Vec<WeightVector> {
    assert!(n >= 2, "simplex_grid needs n >= 2");
    assert!(resolution >= 1, "simplex_grid needs resolution >= 1");
    let mut out = Vec::with_capacity(grid_size(n, resolution));
    let mut parts = vec![0usize; n];
    compositions(resolution, 0, &mut parts, &mut |k| {
        let m = resolution as f64;
        out.push(WeightVector(k.iter().map(|&ki| ki as f64 / m).collect()));
    });
    out
}

fn compositions(remaining: usize, slot: usize, parts: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if slot == parts.len() - 1 {
        parts[slot] = remaining;
        emit(parts);
        return;
    }
    for k in (0..=remaining).rev() {
        parts[slot] = k;
        compositions(remaining - k, slot + 1, parts, emit);
    }
}

/// Number of points produced by [`simplex_grid`].
pub fn grid_size(n: usize, resolution: usize) -> usize {
    binomial(resolution + n - 1, n - 1)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
