//! Dubins trajectory planning with a discrete set of turning radii.
//!
//! The feasible set is one shortest Dubins path per candidate radius, so the
//! solver is an exact argmin over a finite table computed at construction.

mod features;
mod path;

use serde::{Deserialize, Serialize};

pub use features::{path_metrics, PathMetrics, Rect};
pub use path::{DubinsPath, PathType, Pose, Segment};

use super::{argmin_cost, DubinsSpec, ProblemError, Solver, SolverError};
use crate::sample::{Sample, Solution};
use crate::weight::{FeatureVector, WeightVector};

pub const DEFAULT_SPEED: f64 = 1.0;
pub const DEFAULT_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Length,
    IsJerk,
    MaxJerk,
    RegionAvoidance,
}

impl Objective {
    fn pick(self, m: &PathMetrics) -> f64 {
        match self {
            Objective::Length => m.length,
            Objective::IsJerk => m.is_jerk,
            Objective::MaxJerk => m.max_jerk,
            Objective::RegionAvoidance => m.region_avoidance,
        }
    }
}

/// 32 radii log-spaced over `[0.5, 20]` meters.
pub fn default_radii() -> Vec<f64> {
    let (lo, hi) = (0.5f64.ln(), 20.0f64.ln());
    (0..32).map(|i| (lo + (hi - lo) * i as f64 / 31.0).exp()).collect()
}

/// Payload of a Dubins sample: which radius and word won, and its segment lengths in meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DubinsSolution {
    pub radius: f64,
    pub path_type: PathType,
    pub segments: [f64; 3],
}

/// Optional settings; `Default` gives the standard radii, 1 m/s and 5 cm sampling.
#[derive(Debug, Clone, PartialEq)]
pub struct DubinsOptions {
    pub radii: Vec<f64>,
    pub speed: f64,
    pub step: f64,
    pub avoid_region: Option<Rect>,
}

impl Default for DubinsOptions {
    fn default() -> Self {
        Self {
            radii: default_radii(),
            speed: DEFAULT_SPEED,
            step: DEFAULT_STEP,
            avoid_region: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DubinsProblem {
    start: Pose,
    goal: Pose,
    objectives: Vec<Objective>,
    options: DubinsOptions,
    paths: Vec<DubinsPath>,
    features: Vec<FeatureVector>,
}

fn invalid(msg: impl Into<String>) -> ProblemError {
    ProblemError::Validation(msg.into())
}

impl DubinsProblem {
    pub fn new(
        start: Pose,
        goal: Pose,
        objectives: Vec<Objective>,
        options: DubinsOptions,
    ) -> Result<Self, ProblemError> {
        let poses = [start.x, start.y, start.theta, goal.x, goal.y, goal.theta];
        if poses.iter().any(|v| !v.is_finite()) {
            return Err(invalid("poses must be finite"));
        }
        if !(2..=4).contains(&objectives.len()) {
            return Err(invalid(format!("need 2 to 4 objectives, got {}", objectives.len())));
        }
        for (i, o) in objectives.iter().enumerate() {
            if objectives[..i].contains(o) {
                return Err(invalid(format!("objective {o:?} listed twice")));
            }
        }
        let wants_region = objectives.contains(&Objective::RegionAvoidance);
        match (&options.avoid_region, wants_region) {
            (None, true) => return Err(invalid("region_avoidance requires avoid_region")),
            (Some(_), false) => return Err(invalid("avoid_region given without region_avoidance objective")),
            (Some(r), true) if !(r.xmin < r.xmax && r.ymin < r.ymax) => {
                return Err(invalid("avoid_region must have xmin < xmax and ymin < ymax"))
            }
            _ => {}
        }
        if options.radii.is_empty() {
            return Err(invalid("radii must be nonempty"));
        }
        if options.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(invalid("radii must be positive and finite"));
        }
        if options.radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("radii must be strictly increasing"));
        }
        if !(options.speed.is_finite() && options.speed > 0.0) {
            return Err(invalid("speed must be positive"));
        }
        if !(options.step.is_finite() && options.step > 0.0) {
            return Err(invalid("step must be positive"));
        }

        let mut paths = Vec::with_capacity(options.radii.len());
        let mut features = Vec::with_capacity(options.radii.len());
        for &r in &options.radii {
            if let Some(p) = DubinsPath::shortest(start, goal, r) {
                let m = path_metrics(&p, options.speed, options.step, options.avoid_region.as_ref());
                features.push(FeatureVector::new(objectives.iter().map(|o| o.pick(&m)).collect()));
                paths.push(p);
            }
        }
        Ok(Self {
            start,
            goal,
            objectives,
            options,
            paths,
            features,
        })
    }

    pub fn from_spec(spec: &DubinsSpec) -> Result<Self, ProblemError> {
        let defaults = DubinsOptions::default();
        let options = DubinsOptions {
            radii: spec.radii.clone().unwrap_or(defaults.radii),
            speed: spec.speed.unwrap_or(defaults.speed),
            step: spec.step.unwrap_or(defaults.step),
            avoid_region: spec.avoid_region,
        };
        Self::new(spec.start.into(), spec.goal.into(), spec.objectives.clone(), options)
    }

    pub fn dimension(&self) -> usize {
        self.objectives.len()
    }

    pub fn start(&self) -> Pose {
        self.start
    }

    pub fn goal(&self) -> Pose {
        self.goal
    }

    pub fn objectives(&self) -> &[Objective] {
        &self.objectives
    }

    pub fn options(&self) -> &DubinsOptions {
        &self.options
    }

    /// The shortest path per radius, in radius order.
    pub fn candidate_paths(&self) -> &[DubinsPath] {
        &self.paths
    }

    /// Feature vectors of [`Self::candidate_paths`]; this is the whole feasible set.
    pub fn candidate_features(&self) -> &[FeatureVector] {
        &self.features
    }
}

impl Solver for DubinsProblem {
    fn dimension(&self) -> usize {
        DubinsProblem::dimension(self)
    }

    fn solve(&self, w: &WeightVector) -> Result<Sample, SolverError> {
        if w.dimension() != self.dimension() {
            return Err(SolverError::DimensionMismatch {
                expected: self.dimension(),
                found: w.dimension(),
            });
        }
        let (i, _) = argmin_cost(w, &self.features).ok_or(SolverError::NoFeasiblePath)?;
        let p = &self.paths[i];
        let solution = DubinsSolution {
            radius: p.radius,
            path_type: p.path_type,
            segments: p.lengths,
        };
        Ok(Sample::new(
            w.clone(),
            self.features[i].clone(),
            Solution::Dubins(solution),
        ))
    }
}
