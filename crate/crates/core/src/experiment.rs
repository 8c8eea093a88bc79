//! Seeded benchmark experiments comparing the min-regret sampler with the
//! uniform baseline, and the learning-from-choice simulation.
//!
//! Every trial derives its own instance seed from the experiment seed, so a
//! single trial can be regenerated in isolation. Output rows are returned in a
//! fixed order regardless of how many threads ran the trials.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::learning::{run_with_presamples, LearningConfig, LearningError, PresampleMethod, Presamples, QueryMethod};
use crate::metrics::{default_grid_resolution, default_reference, hypervolume, GroundTruth, MetricsError};
use crate::problems::dubins::{DubinsOptions, DubinsProblem, Objective, Pose, Rect};
use crate::problems::{MtspProblem, Problem, ProblemError, Solver, TabularProblem};
use crate::sampler::{mrps_sample, uniform_sample, SamplerError, SamplerReport, UniformMode};
use crate::weight::FeatureVector;

/// Side of the square avoid region, centered between start and goal.
pub const AVOID_SIDE: f64 = 4.0;
/// Goals are drawn from `[-GOAL_HALF_WIDTH, GOAL_HALF_WIDTH]²`.
pub const GOAL_HALF_WIDTH: f64 = 10.0;
pub const MTSP_VERTICES: usize = 9;
pub const MTSP_ROBOTS: usize = 3;
pub const MTSP_BOX: f64 = 10.0;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Learning(#[from] LearningError),
    #[error("could not write CSV: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentName {
    Dubins2,
    Dubins3,
    Dubins4,
    Mtsp,
    Learning,
}

impl ExperimentName {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::Dubins2 => "dubins2",
            ExperimentName::Dubins3 => "dubins3",
            ExperimentName::Dubins4 => "dubins4",
            ExperimentName::Mtsp => "mtsp",
            ExperimentName::Learning => "learning",
        }
    }

    pub fn default_budgets(self) -> Vec<usize> {
        match self {
            ExperimentName::Learning => vec![20],
            _ => vec![1, 2, 3, 5, 10, 20],
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            ExperimentName::Mtsp => 10,
            ExperimentName::Learning => 40,
            _ => 20,
        }
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dubins2" => Ok(ExperimentName::Dubins2),
            "dubins3" => Ok(ExperimentName::Dubins3),
            "dubins4" => Ok(ExperimentName::Dubins4),
            "mtsp" => Ok(ExperimentName::Mtsp),
            "learning" => Ok(ExperimentName::Learning),
            other => Err(format!(
                "unknown experiment `{other}`, expected dubins2, dubins3, dubins4, mtsp or learning"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: ExperimentName,
    pub trials: usize,
    pub budgets: Vec<usize>,
    pub seed: u64,
    /// When false, a budget `K` means `K` samples on top of the `n` basis weights.
    /// Learning experiments always treat `K` as the presample set size.
    pub count_basis: bool,
    /// Grid resolution for ground truth; `None` picks the per-dimension default.
    pub grid_resolution: Option<usize>,
    /// Monte Carlo draws for hypervolume with three or more objectives.
    pub mc_samples: usize,
    /// Rounds per learning session.
    pub iterations: usize,
}

impl ExperimentConfig {
    pub fn new(name: ExperimentName) -> Self {
        Self {
            name,
            trials: name.default_trials(),
            budgets: name.default_budgets(),
            seed: 0,
            count_basis: false,
            grid_resolution: None,
            mc_samples: 20_000,
            iterations: LearningConfig::DEFAULT_ITERATIONS,
        }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::Config("trials must be at least 1".into()));
        }
        if self.budgets.is_empty() {
            return Err(ExperimentError::Config("budgets must be nonempty".into()));
        }
        if self.grid_resolution == Some(0) {
            return Err(ExperimentError::Config("grid resolution must be at least 1".into()));
        }
        if self.iterations == 0 {
            return Err(ExperimentError::Config("iterations must be at least 1".into()));
        }
        Ok(())
    }

    fn omega_size(&self, budget: usize, n: usize) -> Result<usize, ExperimentError> {
        if self.count_basis {
            if budget < n {
                return Err(SamplerError::BudgetTooSmall { budget, dimension: n }.into());
            }
            Ok(budget)
        } else {
            Ok(budget + n)
        }
    }
}

/// Seed of trial `trial`: the first word of stream `trial` of a generator seeded with `seed`.
pub fn instance_seed(seed: u64, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng.next_u64()
}

/// Objectives used by the `dubinsN` experiments.
pub fn dubins_objectives(n: usize) -> Vec<Objective> {
    [
        Objective::Length,
        Objective::IsJerk,
        Objective::MaxJerk,
        Objective::RegionAvoidance,
    ][..n]
        .to_vec()
}

/// Start at the origin facing +x; goal uniform in the box with uniform heading.
/// With four objectives a square region midway between the poses is avoided.
pub fn dubins_instance(objectives: usize, seed: u64) -> Result<DubinsProblem, ProblemError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let goal = Pose::new(
        rng.random_range(-GOAL_HALF_WIDTH..GOAL_HALF_WIDTH),
        rng.random_range(-GOAL_HALF_WIDTH..GOAL_HALF_WIDTH),
        rng.random_range(-PI..PI),
    );
    let start = Pose::new(0.0, 0.0, 0.0);
    let avoid_region =
        (objectives >= 4).then(|| Rect::centered((start.x + goal.x) / 2.0, (start.y + goal.y) / 2.0, AVOID_SIDE));
    let options = DubinsOptions {
        avoid_region,
        ..DubinsOptions::default()
    };
    DubinsProblem::new(start, goal, dubins_objectives(objectives), options)
}

/// Vertex coordinates for an mTSP instance; vertex 0 is the depot.
pub fn mtsp_coords(seed: u64, vertices: usize) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..vertices)
        .map(|_| [rng.random_range(0.0..MTSP_BOX), rng.random_range(0.0..MTSP_BOX)])
        .collect()
}

pub fn mtsp_instance(seed: u64) -> Result<MtspProblem, ProblemError> {
    MtspProblem::from_coords(&mtsp_coords(seed, MTSP_VERTICES), MTSP_ROBOTS, 0)
}

/// One sampler run on one instance, evaluated against grid ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub experiment: String,
    pub trial: usize,
    pub seed: u64,
    pub method: String,
    #[serde(rename = "K")]
    pub k: usize,
    pub samples: usize,
    pub solver_calls: usize,
    pub certified_bound: Option<f64>,
    pub max_regret: f64,
    pub max_relative_regret: Option<f64>,
    pub hypervolume: Option<f64>,
    pub hypervolume_gap: Option<f64>,
    pub grid_resolution: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub experiment: String,
    pub method: String,
    #[serde(rename = "K")]
    pub k: usize,
    pub trials: usize,
    pub median_certified_bound: Option<f64>,
    pub median_max_regret: Option<f64>,
    pub median_max_relative_regret: Option<f64>,
    pub median_hypervolume: Option<f64>,
    pub median_hypervolume_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningRow {
    pub presample_method: String,
    pub query_method: String,
    #[serde(rename = "K")]
    pub k: usize,
    pub seed: u64,
    pub user: usize,
    pub iteration: usize,
    pub relative_regret: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningSummaryRow {
    pub presample_method: String,
    pub query_method: String,
    #[serde(rename = "K")]
    pub k: usize,
    pub iteration: usize,
    pub users: usize,
    pub median_relative_regret: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentOutput {
    Sampling {
        trials: Vec<TrialRow>,
        summary: Vec<SummaryRow>,
    },
    Learning {
        trials: Vec<LearningRow>,
        summary: Vec<LearningSummaryRow>,
    },
}

impl ExperimentOutput {
    pub fn trials_csv(&self) -> Result<String, ExperimentError> {
        match self {
            ExperimentOutput::Sampling { trials, .. } => to_csv(trials),
            ExperimentOutput::Learning { trials, .. } => to_csv(trials),
        }
    }

    pub fn summary_csv(&self) -> Result<String, ExperimentError> {
        match self {
            ExperimentOutput::Sampling { summary, .. } => to_csv(summary),
            ExperimentOutput::Learning { summary, .. } => to_csv(summary),
        }
    }

    pub fn trial_count(&self) -> usize {
        match self {
            ExperimentOutput::Sampling { trials, .. } => trials.len(),
            ExperimentOutput::Learning { trials, .. } => trials.len(),
        }
    }
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, ExperimentError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| ExperimentError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Median of the values; the mean of the middle pair for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    })
}

/// Runs the named experiment. Trials run on the current rayon pool.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, ExperimentError> {
    config.validate()?;
    match config.name {
        ExperimentName::Dubins2 => sampling(config, 2, |s| dubins_instance(2, s)),
        ExperimentName::Dubins3 => sampling(config, 3, |s| dubins_instance(3, s)),
        ExperimentName::Dubins4 => sampling(config, 4, |s| dubins_instance(4, s)),
        ExperimentName::Mtsp => sampling(config, 2, mtsp_instance),
        ExperimentName::Learning => learning(config),
    }
}

/// Every feature vector of the instance's feasible set, when it is enumerable.
pub trait FeasibleSet {
    fn feasible_features(&self) -> Vec<FeatureVector>;
}

impl FeasibleSet for DubinsProblem {
    fn feasible_features(&self) -> Vec<FeatureVector> {
        self.candidate_features().to_vec()
    }
}

impl FeasibleSet for MtspProblem {
    fn feasible_features(&self) -> Vec<FeatureVector> {
        self.candidates().iter().map(|(f, _)| f.clone()).collect()
    }
}

impl FeasibleSet for TabularProblem {
    fn feasible_features(&self) -> Vec<FeatureVector> {
        self.rows().to_vec()
    }
}

impl FeasibleSet for Problem {
    fn feasible_features(&self) -> Vec<FeatureVector> {
        match self {
            Problem::Tabular(p) => p.feasible_features(),
            Problem::Dubins(p) => p.feasible_features(),
            Problem::Mtsp(p) => p.feasible_features(),
        }
    }
}

const METHODS: [&str; 2] = ["mrps", "uniform-grid"];

fn sampling<P, F>(config: &ExperimentConfig, n: usize, make: F) -> Result<ExperimentOutput, ExperimentError>
where
    P: Solver + FeasibleSet,
    F: Fn(u64) -> Result<P, ProblemError> + Sync,
{
    let sizes = config
        .budgets
        .iter()
        .map(|&k| config.omega_size(k, n))
        .collect::<Result<Vec<_>, _>>()?;
    let resolution = config.grid_resolution.unwrap_or_else(|| default_grid_resolution(n));

    let per_trial: Vec<Vec<TrialRow>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| -> Result<Vec<TrialRow>, ExperimentError> {
            let seed = instance_seed(config.seed, trial);
            let problem = make(seed)?;
            let truth = GroundTruth::new(&problem, resolution)?;
            let dense = problem.feasible_features();
            let reference = default_reference(&dense);
            let dense_hv = match &reference {
                Some(r) => Some(hypervolume(&dense, r, config.mc_samples, seed)?),
                None => None,
            };
            let mut rows = Vec::new();
            for method in METHODS {
                for (&k, &size) in config.budgets.iter().zip(&sizes) {
                    let report: SamplerReport = match method {
                        "mrps" => mrps_sample(&problem, size)?,
                        _ => uniform_sample(&problem, size, UniformMode::Grid, seed)?,
                    };
                    let eval = truth.evaluate(&report.omega)?;
                    let points = report.omega.features();
                    let hv = match &reference {
                        Some(r) => Some(hypervolume(&points, r, config.mc_samples, seed)?),
                        None => None,
                    };
                    rows.push(TrialRow {
                        experiment: config.name.to_string(),
                        trial,
                        seed,
                        method: method.to_string(),
                        k,
                        samples: report.omega.len(),
                        solver_calls: report.solver_calls,
                        certified_bound: report.certified_bound,
                        max_regret: eval.max_regret,
                        max_relative_regret: eval.max_relative_regret,
                        hypervolume: hv,
                        hypervolume_gap: dense_hv.zip(hv).map(|(d, h)| d - h),
                        grid_resolution: resolution,
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Result<_, _>>()?;
    let trials: Vec<TrialRow> = per_trial.into_iter().flatten().collect();

    let mut summary = Vec::new();
    for method in METHODS {
        for &k in &config.budgets {
            let group: Vec<&TrialRow> = trials.iter().filter(|r| r.method == method && r.k == k).collect();
            let col = |f: fn(&TrialRow) -> Option<f64>| median(&group.iter().filter_map(|r| f(r)).collect::<Vec<_>>());
            summary.push(SummaryRow {
                experiment: config.name.to_string(),
                method: method.to_string(),
                k,
                trials: group.len(),
                median_certified_bound: col(|r| r.certified_bound),
                median_max_regret: col(|r| Some(r.max_regret)),
                median_max_relative_regret: col(|r| r.max_relative_regret),
                median_hypervolume: col(|r| r.hypervolume),
                median_hypervolume_gap: col(|r| r.hypervolume_gap),
            });
        }
    }
    Ok(ExperimentOutput::Sampling { trials, summary })
}

const PRESAMPLE_METHODS: [PresampleMethod; 2] = [PresampleMethod::Uniform, PresampleMethod::Mrps];
const QUERY_METHODS: [QueryMethod; 2] = [QueryMethod::Random, QueryMethod::Regret];

/// Learning on one four-objective Dubins instance. For each set size `K`,
/// hidden users are drawn uniformly from the union of both presample sets;
/// weights with zero optimal cost are skipped since relative regret is
/// undefined there.
fn learning(config: &ExperimentConfig) -> Result<ExperimentOutput, ExperimentError> {
    let problem = dubins_instance(4, instance_seed(config.seed, 0))?;
    let mut trials = Vec::new();
    for &k in &config.budgets {
        let presamples = Presamples::build(&problem, k, config.seed)?;
        let mut pool = Vec::new();
        for w in presamples.union_weights() {
            if problem.solve(&w).map_err(SamplerError::from)?.cost > 1e-12 {
                pool.push(w);
            }
        }
        if pool.is_empty() {
            return Err(ExperimentError::Config(format!("no usable hidden users for K={k}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(k as u64);
        let users: Vec<(usize, u64)> = (0..config.trials)
            .map(|_| (rng.random_range(0..pool.len()), rng.next_u64()))
            .collect();

        let per_user: Vec<Vec<LearningRow>> = users
            .par_iter()
            .enumerate()
            .map(|(user, &(pick, seed))| -> Result<Vec<LearningRow>, ExperimentError> {
                let mut rows = Vec::new();
                for pm in PRESAMPLE_METHODS {
                    for qm in QUERY_METHODS {
                        let cfg = LearningConfig {
                            presample_method: pm,
                            presample_size: k,
                            query_method: qm,
                            iterations: config.iterations,
                            seed,
                            hidden_user_weight: pool[pick].clone(),
                        };
                        let history = run_with_presamples(&cfg, &problem, &presamples)?;
                        for (iteration, r) in history.curve().into_iter().enumerate() {
                            rows.push(LearningRow {
                                presample_method: pm.as_str().to_string(),
                                query_method: qm.as_str().to_string(),
                                k,
                                seed,
                                user,
                                iteration,
                                relative_regret: r,
                            });
                        }
                    }
                }
                Ok(rows)
            })
            .collect::<Result<_, _>>()?;
        trials.extend(per_user.into_iter().flatten());
    }

    let mut summary = Vec::new();
    for &k in &config.budgets {
        for pm in PRESAMPLE_METHODS {
            for qm in QUERY_METHODS {
                for iteration in 0..=config.iterations {
                    let vals: Vec<f64> = trials
                        .iter()
                        .filter(|r| {
                            r.k == k
                                && r.presample_method == pm.as_str()
                                && r.query_method == qm.as_str()
                                && r.iteration == iteration
                        })
                        .map(|r| r.relative_regret)
                        .collect();
                    summary.push(LearningSummaryRow {
                        presample_method: pm.as_str().to_string(),
                        query_method: qm.as_str().to_string(),
                        k,
                        iteration,
                        users: vals.len(),
                        median_relative_regret: median(&vals).unwrap_or(f64::NAN),
                    });
                }
            }
        }
    }
    Ok(ExperimentOutput::Learning { trials, summary })
}
