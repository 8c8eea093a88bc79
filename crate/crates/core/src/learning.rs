//! Simulated reward learning from pairwise choices over a presampled solution set.
//!
//! Each round shows the user the incumbent and one challenger; a deterministic
//! user picks the cheaper one under a hidden weight, the winner becomes the
//! incumbent, and weights contradicting the choice are dropped from the
//! consistent set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{relative_regret, MetricsError};
use crate::problems::Solver;
use crate::sample::{Sample, SampleSet};
use crate::sampler::{mrps_sample, uniform_sample, SamplerError, UniformMode};
use crate::weight::{FeatureVector, WeightVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LearningError {
    #[error("invalid learning configuration: {0}")]
    Config(String),
    #[error("hidden weight has dimension {found}, problem has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresampleMethod {
    Uniform,
    Mrps,
}

impl PresampleMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            PresampleMethod::Uniform => "uniform",
            PresampleMethod::Mrps => "mrps",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QueryMethod {
    #[serde(rename = "random")]
    Random,
    /// Max-challenge rule over the consistent weight set.
    #[serde(rename = "regret-simplified")]
    Regret,
}

impl QueryMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryMethod::Random => "random",
            QueryMethod::Regret => "regret-simplified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Choice {
    A,
    B,
}

/// The user prefers `A` iff `w*·f_A ≤ w*·f_B`.
pub fn simulate_choice(fa: &FeatureVector, fb: &FeatureVector, w_star: &WeightVector) -> Choice {
    if w_star.dot(fa) <= w_star.dot(fb) {
        Choice::A
    } else {
        Choice::B
    }
}

/// A uniformly random presample index other than `incumbent` (unless it is the only one).
pub fn select_query_random(presamples: &SampleSet, incumbent: usize, rng: &mut impl Rng) -> usize {
    let len = presamples.len();
    if len <= 1 {
        return 0;
    }
    let k = rng.random_range(0..len - 1);
    if k >= incumbent {
        k + 1
    } else {
        k
    }
}

/// The presample with the largest `max_{w ∈ consistent} w·(f_inc − f_s)`; lowest index on ties.
pub fn select_query_regret(presamples: &SampleSet, incumbent: usize, consistent: &[WeightVector]) -> usize {
    let inc = &presamples.get(incumbent).features;
    let mut best = (0, f64::NEG_INFINITY);
    for (i, s) in presamples.iter().enumerate() {
        let challenge = consistent
            .iter()
            .map(|w| w.dot(inc) - w.dot(&s.features))
            .fold(f64::NEG_INFINITY, f64::max);
        if challenge > best.1 {
            best = (i, challenge);
        }
    }
    best.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningConfig {
    pub presample_method: PresampleMethod,
    pub presample_size: usize,
    pub query_method: QueryMethod,
    pub iterations: usize,
    pub seed: u64,
    pub hidden_user_weight: WeightVector,
}

impl LearningConfig {
    pub const DEFAULT_ITERATIONS: usize = 10;
}

/// Both presample sets of one size: the union of their weights seeds the consistent set.
#[derive(Debug, Clone, PartialEq)]
pub struct Presamples {
    pub uniform: SampleSet,
    pub mrps: SampleSet,
}

impl Presamples {
    /// `size` counts all samples, basis included; the uniform set uses random weights.
    pub fn build<S: Solver + ?Sized>(problem: &S, size: usize, seed: u64) -> Result<Self, SamplerError> {
        Ok(Self {
            uniform: uniform_sample(problem, size, UniformMode::Random, seed)?.omega,
            mrps: mrps_sample(problem, size)?.omega,
        })
    }

    pub fn get(&self, method: PresampleMethod) -> &SampleSet {
        match method {
            PresampleMethod::Uniform => &self.uniform,
            PresampleMethod::Mrps => &self.mrps,
        }
    }

    /// Distinct weights of both sets, uniform first.
    pub fn union_weights(&self) -> Vec<WeightVector> {
        let mut out: Vec<WeightVector> = Vec::new();
        for s in self.uniform.iter().chain(self.mrps.iter()) {
            if !out.iter().any(|w| w.approx_eq(&s.weight)) {
                out.push(s.weight.clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningRecord {
    pub iteration: usize,
    /// `(incumbent, challenger)` as shown to the user.
    pub query: (Sample, Sample),
    pub choice: Choice,
    pub incumbent: Sample,
    pub relative_regret: f64,
    pub consistent_weights: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearningHistory {
    pub presample_method: PresampleMethod,
    pub query_method: QueryMethod,
    pub presample_size: usize,
    pub seed: u64,
    pub initial_incumbent: Sample,
    pub initial_relative_regret: f64,
    pub records: Vec<LearningRecord>,
}

impl LearningHistory {
    /// Relative regret after the last round (or the initial one with no rounds).
    pub fn final_relative_regret(&self) -> f64 {
        self.records
            .last()
            .map_or(self.initial_relative_regret, |r| r.relative_regret)
    }

    /// Relative regret per iteration, starting with iteration 0.
    pub fn curve(&self) -> Vec<f64> {
        std::iter::once(self.initial_relative_regret)
            .chain(self.records.iter().map(|r| r.relative_regret))
            .collect()
    }
}

/// Builds both presample sets and runs one session.
pub fn run_learning_session<S: Solver + ?Sized>(
    config: &LearningConfig,
    problem: &S,
) -> Result<LearningHistory, LearningError> {
    validate(config, problem)?;
    let presamples = Presamples::build(problem, config.presample_size, config.seed)?;
    run_with_presamples(config, problem, &presamples)
}

fn validate<S: Solver + ?Sized>(config: &LearningConfig, problem: &S) -> Result<(), LearningError> {
    let n = problem.dimension();
    if config.hidden_user_weight.dimension() != n {
        return Err(LearningError::DimensionMismatch {
            expected: n,
            found: config.hidden_user_weight.dimension(),
        });
    }
    if config.iterations == 0 {
        return Err(LearningError::Config("iterations must be at least 1".into()));
    }
    if config.presample_size < n {
        return Err(LearningError::Config(format!(
            "presample size {} is below the {n} objectives",
            config.presample_size
        )));
    }
    Ok(())
}

/// Runs one session against precomputed presample sets.
///
/// A pruning step that would leave no consistent weight is skipped, which can
/// only happen when the hidden weight was not in the initial set.
pub fn run_with_presamples<S: Solver + ?Sized>(
    config: &LearningConfig,
    problem: &S,
    presamples: &Presamples,
) -> Result<LearningHistory, LearningError> {
    validate(config, problem)?;
    let set = presamples.get(config.presample_method);
    let w_star = &config.hidden_user_weight;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut consistent = presamples.union_weights();

    let center = WeightVector::barycenter(problem.dimension());
    let start = (0..set.len())
        .min_by(|&a, &b| {
            center
                .dot(&set.get(a).features)
                .total_cmp(&center.dot(&set.get(b).features))
        })
        .expect("presample sets are nonempty");
    let mut incumbent = start;
    let initial_relative_regret = relative_regret(set.get(incumbent), w_star, problem)?;

    let mut records = Vec::with_capacity(config.iterations);
    for iteration in 1..=config.iterations {
        let challenger = match config.query_method {
            QueryMethod::Random => select_query_random(set, incumbent, &mut rng),
            QueryMethod::Regret => select_query_regret(set, incumbent, &consistent),
        };
        let (a, b) = (set.get(incumbent), set.get(challenger));
        let choice = simulate_choice(&a.features, &b.features, w_star);
        let (winner, loser) = match choice {
            Choice::A => (incumbent, challenger),
            Choice::B => (challenger, incumbent),
        };
        let (fw, fl) = (&set.get(winner).features, &set.get(loser).features);
        let kept: Vec<WeightVector> = consistent
            .iter()
            .filter(|w| simulate_choice(fw, fl, w) == Choice::A)
            .cloned()
            .collect();
        if !kept.is_empty() {
            consistent = kept;
        }
        incumbent = winner;
        records.push(LearningRecord {
            iteration,
            query: (a.clone(), b.clone()),
            choice,
            incumbent: set.get(incumbent).clone(),
            relative_regret: relative_regret(set.get(incumbent), w_star, problem)?,
            consistent_weights: consistent.len(),
        });
    }
    Ok(LearningHistory {
        presample_method: config.presample_method,
        query_method: config.query_method,
        presample_size: config.presample_size,
        seed: config.seed,
        initial_incumbent: set.get(start).clone(),
        initial_relative_regret,
        records,
    })
}
