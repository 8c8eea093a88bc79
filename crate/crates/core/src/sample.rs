//! Solved weights and collections of them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerance;
use crate::weight::{FeatureVector, WeightVector};

/// Problem-specific handle on the solution `s*(w)` a solver returned.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Solution {
    /// Row index into a tabular problem's feature table.
    Index(usize),
    Dubins(crate::problems::dubins::DubinsSolution),
    Mtsp(crate::problems::mtsp::MtspSolution),
    /// Anything else a caller-provided solver wants to attach.
    Other(serde_json::Value),
}

/// One solver call: a weight, the optimal solution, its features and its cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub weight: WeightVector,
    pub features: FeatureVector,
    /// `weight · features`, which equals `u(weight)` for an exact solver.
    pub cost: f64,
    pub solution: Solution,
}

impl Sample {
    /// Builds a sample, computing the cost from the weight and features.
    pub fn new(weight: WeightVector, features: FeatureVector, solution: Solution) -> Self {
        let cost = weight.dot(&features);
        Self {
            weight,
            features,
            cost,
            solution,
        }
    }

    pub fn dimension(&self) -> usize {
        self.weight.dimension()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleSetError {
    #[error("sample set is empty")]
    Empty,
    #[error("sample {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("samples {first} and {second} share the same weight")]
    DuplicateWeight { first: usize, second: usize },
    #[error("sample {index}: cost {cost} does not match weight·features = {expected}")]
    InconsistentCost { index: usize, cost: f64, expected: f64 },
}

/// Ordered set of samples with pairwise distinct weights (the set Ω).
///
/// Serializes as a plain JSON array of samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Sample>", into = "Vec<Sample>")]
pub struct SampleSet {
    dimension: usize,
    samples: Vec<Sample>,
}

impl SampleSet {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            samples: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn get(&self, index: usize) -> &Sample {
        &self.samples[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sample> {
        self.samples.iter()
    }

    /// Index of the sample whose weight is within the duplicate tolerance of `w`.
    pub fn find(&self, w: &WeightVector) -> Option<usize> {
        self.samples.iter().position(|s| s.weight.approx_eq(w))
    }

    /// Appends `sample` unless its weight is already present; returns its index.
    pub fn insert(&mut self, sample: Sample) -> Result<usize, SampleSetError> {
        if sample.dimension() != self.dimension {
            return Err(SampleSetError::DimensionMismatch {
                index: self.samples.len(),
                expected: self.dimension,
                found: sample.dimension(),
            });
        }
        if let Some(i) = self.find(&sample.weight) {
            return Ok(i);
        }
        self.samples.push(sample);
        Ok(self.samples.len() - 1)
    }

    pub fn weights(&self) -> Vec<WeightVector> {
        self.samples.iter().map(|s| s.weight.clone()).collect()
    }

    pub fn features(&self) -> Vec<FeatureVector> {
        self.samples.iter().map(|s| s.features.clone()).collect()
    }

    /// Keeps only the first `len` samples.
    pub fn truncate(&mut self, len: usize) {
        self.samples.truncate(len);
    }
}

impl TryFrom<Vec<Sample>> for SampleSet {
    type Error = SampleSetError;

    fn try_from(samples: Vec<Sample>) -> Result<Self, Self::Error> {
        let dimension = samples.first().ok_or(SampleSetError::Empty)?.dimension();
        let mut set = SampleSet::new(dimension);
        for (index, s) in samples.into_iter().enumerate() {
            if s.features.dimension() != dimension || s.dimension() != dimension {
                return Err(SampleSetError::DimensionMismatch {
                    index,
                    expected: dimension,
                    found: s.features.dimension().max(s.dimension()),
                });
            }
            let expected = s.weight.dot(&s.features);
            if (expected - s.cost).abs() > tolerance::SUM * (1.0 + expected.abs()) {
                return Err(SampleSetError::InconsistentCost {
                    index,
                    cost: s.cost,
                    expected,
                });
            }
            if let Some(first) = set.find(&s.weight) {
                return Err(SampleSetError::DuplicateWeight { first, second: index });
            }
            set.samples.push(s);
        }
        Ok(set)
    }
}

impl From<SampleSet> for Vec<Sample> {
    fn from(set: SampleSet) -> Self {
        set.samples
    }
}
