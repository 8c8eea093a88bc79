//! Neighborhoods: `n` linearly independent sampled weights whose convex hull
//! tiles part of the weight simplex, together with their regret bound.

use thiserror::Error;

use crate::linalg::Square;
use crate::lp::{self, LpError};
use crate::sample::Sample;
use crate::tolerance;
use crate::weight::{FeatureVector, WeightVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NeighborhoodError {
    #[error("neighborhood vertices are linearly dependent")]
    SingularNeighborhood,
    #[error("weight lies outside the neighborhood hull (barycentric coordinate {coordinate})")]
    OutsideHull { coordinate: f64 },
    #[error("a neighborhood in dimension {dimension} needs {dimension} vertices, got {count}")]
    VertexCount { dimension: usize, count: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("witness lies outside the neighborhood hull")]
    WitnessOutsideHull,
    #[error("regret LP failed: {0}")]
    Lp(#[from] LpError),
}

/// True iff the `n` weights (each of dimension `n`) are linearly independent.
///
/// Uses complete-pivoting elimination: every pivot must exceed the rank tolerance.
pub fn is_neighborhood(weights: &[WeightVector]) -> bool {
    let n = weights.len();
    if n < 2 || weights.iter().any(|w| w.dimension() != n) {
        return false;
    }
    let cols: Vec<&[f64]> = weights.iter().map(|w| w.as_slice()).collect();
    Square::from_columns(&cols).min_pivot() > tolerance::RANK
}

/// Coordinates `λ` with `Σ λᵢ vᵢ = w`. Since every vertex and `w` lie on the
/// simplex, `Σ λᵢ = 1` follows. Coordinates are negative when `w` is outside
/// the hull.
pub fn barycentric_coordinates(w: &WeightVector, vertices: &[WeightVector]) -> Result<Vec<f64>, NeighborhoodError> {
    let n = vertices.len();
    if w.dimension() != n {
        return Err(NeighborhoodError::DimensionMismatch {
            expected: n,
            found: w.dimension(),
        });
    }
    if !is_neighborhood(vertices) {
        return Err(NeighborhoodError::SingularNeighborhood);
    }
    let cols: Vec<&[f64]> = vertices.iter().map(|v| v.as_slice()).collect();
    Square::from_columns(&cols)
        .solve(w.as_slice(), 0.0)
        .ok_or(NeighborhoodError::SingularNeighborhood)
}

/// A neighborhood `N` with the cached data the regret LP needs and its result.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    vertices: Vec<WeightVector>,
    vertex_costs: Vec<f64>,
    vertex_features: Vec<FeatureVector>,
    bound: f64,
    witness: WeightVector,
}

impl Neighborhood {
    /// Builds a neighborhood from `n` solved samples and computes its regret
    /// bound and witness.
    pub fn from_samples(samples: &[&Sample]) -> Result<Self, NeighborhoodError> {
        Self::new(
            samples.iter().map(|s| s.weight.clone()).collect(),
            samples.iter().map(|s| s.cost).collect(),
            samples.iter().map(|s| s.features.clone()).collect(),
        )
    }

    pub fn new(
        vertices: Vec<WeightVector>,
        vertex_costs: Vec<f64>,
        vertex_features: Vec<FeatureVector>,
    ) -> Result<Self, NeighborhoodError> {
        let n = vertices.first().map_or(0, |v| v.dimension());
        if vertices.len() != n || vertex_costs.len() != n || vertex_features.len() != n {
            return Err(NeighborhoodError::VertexCount {
                dimension: n,
                count: vertices.len(),
            });
        }
        if let Some(f) = vertex_features.iter().find(|f| f.dimension() != n) {
            return Err(NeighborhoodError::DimensionMismatch {
                expected: n,
                found: f.dimension(),
            });
        }
        if !is_neighborhood(&vertices) {
            return Err(NeighborhoodError::SingularNeighborhood);
        }
        let (bound, witness) = lp::max_min_neighborhood_regret(&vertices, &vertex_costs, &vertex_features)?;
        Ok(Self {
            vertices,
            vertex_costs,
            vertex_features,
            bound,
            witness,
        })
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[WeightVector] {
        &self.vertices
    }

    pub fn vertex_costs(&self) -> &[f64] {
        &self.vertex_costs
    }

    /// The feature set `F(N)`.
    pub fn vertex_features(&self) -> &[FeatureVector] {
        &self.vertex_features
    }

    /// Upper bound on the max-min regret inside the hull.
    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// The weight attaining [`Neighborhood::bound`].
    pub fn witness(&self) -> &WeightVector {
        &self.witness
    }

    pub(crate) fn retire(&mut self) {
        self.bound = 0.0;
    }

    pub fn barycentric(&self, w: &WeightVector) -> Result<Vec<f64>, NeighborhoodError> {
        barycentric_coordinates(w, &self.vertices)
    }

    pub fn contains(&self, w: &WeightVector) -> bool {
        self.barycentric(w)
            .map(|l| l.iter().all(|&c| c >= -tolerance::HULL))
            .unwrap_or(false)
    }

    /// The linear interpolant `P(w) = Σ λᵢ u(wⁱ)` of the optimal cost.
    pub fn interpolate(&self, w: &WeightVector) -> Result<f64, NeighborhoodError> {
        let lambda = self.barycentric(w)?;
        if let Some(&c) = lambda.iter().find(|&&c| c < -tolerance::HULL) {
            return Err(NeighborhoodError::OutsideHull { coordinate: c });
        }
        Ok(lambda.iter().zip(&self.vertex_costs).map(|(l, u)| l * u).sum())
    }

    /// Volume of the hull as a fraction of the whole simplex, `|det V|`.
    pub fn relative_volume(&self) -> f64 {
        relative_volume(&self.vertices)
    }
}

pub(crate) fn relative_volume(vertices: &[WeightVector]) -> f64 {
    let cols: Vec<&[f64]> = vertices.iter().map(|v| v.as_slice()).collect();
    Square::from_columns(&cols).abs_det()
}
