//! Exact solvers for linearly scalarized multi-objective problems.
//!
//! A [`Solver`] maps a weight `w` on the simplex to a solution minimizing
//! `w · f(s)` over the problem's (finite) feasible set. All three concrete
//! problems precompute that feasible set at construction, so solving is a
//! deterministic argmin.

pub mod dubins;
pub mod mtsp;
pub mod tabular;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dubins::{DubinsProblem, Objective, Pose, Rect};
pub use mtsp::MtspProblem;
pub use tabular::TabularProblem;

use crate::sample::Sample;
use crate::weight::{FeatureVector, WeightVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("weight has dimension {found}, problem has {expected} objectives")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("solver returned non-finite features {0:?}")]
    NonFinite(FeatureVector),
    #[error("no feasible Dubins path for any candidate radius")]
    NoFeasiblePath,
    #[error("{0}")]
    Other(String),
}

/// An exact solver for `u(w) = min_s w · f(s)`.
///
/// Implementations must be deterministic: identical weights give identical samples.
pub trait Solver: Send + Sync {
    fn dimension(&self) -> usize;

    fn solve(&self, w: &WeightVector) -> Result<Sample, SolverError>;
}

impl<S: Solver + ?Sized> Solver for &S {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn solve(&self, w: &WeightVector) -> Result<Sample, SolverError> {
        (**self).solve(w)
    }
}

impl<S: Solver + ?Sized> Solver for Box<S> {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn solve(&self, w: &WeightVector) -> Result<Sample, SolverError> {
        (**self).solve(w)
    }
}

/// Calls `solver` after checking the weight dimension, and rejects unbounded
/// (non-finite) objective values.
pub fn solve_checked<S: Solver + ?Sized>(solver: &S, w: &WeightVector) -> Result<Sample, SolverError> {
    if w.dimension() != solver.dimension() {
        return Err(SolverError::DimensionMismatch {
            expected: solver.dimension(),
            found: w.dimension(),
        });
    }
    let sample = solver.solve(w)?;
    if !sample.features.is_finite() || !sample.cost.is_finite() {
        return Err(SolverError::NonFinite(sample.features));
    }
    Ok(sample)
}

/// Index of the minimizer of `w · rows[i]`, lowest index on ties.
pub(crate) fn argmin_cost<'a>(
    w: &WeightVector,
    rows: impl IntoIterator<Item = &'a FeatureVector>,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, f) in rows.into_iter().enumerate() {
        let c = w.dot(f);
        if best.is_none_or(|(_, b)| c < b) {
            best = Some((i, c));
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("instance too large for exact enumeration: {0}")]
    InstanceTooLarge(String),
}

/// On-disk problem description; the `type` field selects the variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ProblemSpec {
    Tabular(TabularSpec),
    Dubins(DubinsSpec),
    Mtsp(MtspSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TabularSpec {
    pub features: Vec<Vec<f64>>,
}

/// Angles are in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DubinsSpec {
    pub start: [f64; 3],
    pub goal: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    pub objectives: Vec<Objective>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub avoid_region: Option<Rect>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MtspSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    pub robots: usize,
    pub depot: usize,
}

/// A configured problem of one of the built-in kinds.
#[derive(Debug, Clone)]
pub enum Problem {
    Tabular(TabularProblem),
    Dubins(DubinsProblem),
    Mtsp(MtspProblem),
}

impl Problem {
    pub fn from_spec(spec: &ProblemSpec) -> Result<Self, ProblemError> {
        Ok(match spec {
            ProblemSpec::Tabular(t) => Problem::Tabular(TabularProblem::new(
                t.features.iter().cloned().map(Into::into).collect(),
            )?),
            ProblemSpec::Dubins(d) => Problem::Dubins(DubinsProblem::from_spec(d)?),
            ProblemSpec::Mtsp(m) => Problem::Mtsp(MtspProblem::from_spec(m)?),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Problem::Tabular(_) => "tabular",
            Problem::Dubins(_) => "dubins",
            Problem::Mtsp(_) => "mtsp",
        }
    }
}

impl Solver for Problem {
    fn dimension(&self) -> usize {
        match self {
            Problem::Tabular(p) => p.dimension(),
            Problem::Dubins(p) => p.dimension(),
            Problem::Mtsp(p) => p.dimension(),
        }
    }

    fn solve(&self, w: &WeightVector) -> Result<Sample, SolverError> {
        match self {
            Problem::Tabular(p) => p.solve(w),
            Problem::Dubins(p) => p.solve(w),
            Problem::Mtsp(p) => p.solve(w),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} problem with {} objectives", self.kind(), self.dimension())
    }
}

/// Parses a JSON problem description and validates it.
pub fn load_problem(json: &str) -> Result<Problem, ProblemError> {
    Problem::from_spec(&parse_spec(json)?)
}

/// Parses a JSON problem description without validating it.
///
/// The `type` tag is dispatched by hand so that schema errors keep the path
/// of the offending field.
pub fn parse_spec(json: &str) -> Result<ProblemSpec, ProblemError> {
    let schema = |path: &str, message: String| ProblemError::Schema {
        path: path.to_string(),
        message,
    };
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| schema(".", e.to_string()))?;
    let serde_json::Value::Object(mut fields) = value else {
        return Err(schema(".", "expected a JSON object".into()));
    };
    let kind = match fields.remove("type") {
        Some(serde_json::Value::String(s)) => s,
        Some(_) => return Err(schema("type", "expected a string".into())),
        None => return Err(schema("type", "missing field `type`".into())),
    };
    fn body<T: serde::de::DeserializeOwned>(
        fields: serde_json::Map<String, serde_json::Value>,
    ) -> Result<T, ProblemError> {
        serde_path_to_error::deserialize(serde_json::Value::Object(fields)).map_err(|e| ProblemError::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }
    match kind.as_str() {
        "tabular" => Ok(ProblemSpec::Tabular(body(fields)?)),
        "dubins" => Ok(ProblemSpec::Dubins(body(fields)?)),
        "mtsp" => Ok(ProblemSpec::Mtsp(body(fields)?)),
        other => Err(schema(
            "type",
            format!("unknown problem type `{other}`, expected tabular, dubins or mtsp"),
        )),
    }
}
