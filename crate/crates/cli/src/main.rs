//! `mrps` command-line driver.
//!
//! Every option can come from a flag or a JSON file passed with `--config`;
//! flags win over the file, and the file wins over built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use mrps::experiment::{run_experiment, to_csv, ExperimentConfig, ExperimentError, ExperimentName, FeasibleSet};
use mrps::learning::LearningConfig;
use mrps::metrics::{default_grid_resolution, default_reference, hypervolume, GroundTruth, MetricsError, MetricsRow};
use mrps::problems::{load_problem, Problem, ProblemError};
use mrps::sampler::{mrps_sample, mrps_sample_to_tolerance, uniform_sample, Method, SamplerError, UniformMode};
use mrps::{SampleSet, SamplerReport, Solver};

#[derive(Parser)]
#[command(name = "mrps", version, about = "Min-regret sampling of the weight simplex")]
struct Cli {
    /// Worker threads (default: MRPS_JOBS, else one per core).
    #[arg(long, global = true, env = "MRPS_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample weights for one problem and write the report as JSON.
    Sample(SampleArgs),
    /// Measure a sample set against grid ground truth and append a CSV row.
    Evaluate(EvaluateArgs),
    /// Run a seeded experiment and write per-trial and summary CSVs.
    Experiment(ExperimentArgs),
    /// Preference-learning experiment (`experiment learning` with its own flags).
    Learn(LearnArgs),
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problem JSON file.
    #[arg(long)]
    problem: Option<PathBuf>,
    /// mrps, uniform-grid or uniform-random.
    #[arg(long)]
    method: Option<String>,
    /// Sampling budget K.
    #[arg(long)]
    budget: Option<usize>,
    /// Stop once the certified bound is at most this (mrps only).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Upper limit on |Ω| for tolerance runs.
    #[arg(long)]
    max_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Whether the n basis weights count toward the budget.
    #[arg(long)]
    count_basis: Option<bool>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SampleFile {
    problem: Option<PathBuf>,
    method: Option<String>,
    budget: Option<usize>,
    tolerance: Option<f64>,
    max_samples: Option<usize>,
    seed: Option<u64>,
    count_basis: Option<bool>,
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<PathBuf>,
    /// A report written by `sample`.
    #[arg(long)]
    omega: Option<PathBuf>,
    /// Simplex grid resolution m (default depends on the number of objectives).
    #[arg(long)]
    grid_resolution: Option<usize>,
    /// Monte Carlo draws for hypervolume with three or more objectives.
    #[arg(long)]
    mc_samples: Option<usize>,
    /// CSV file to append to; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct EvaluateFile {
    problem: Option<PathBuf>,
    omega: Option<PathBuf>,
    grid_resolution: Option<usize>,
    mc_samples: Option<usize>,
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// dubins2, dubins3, dubins4, mtsp or learning.
    name: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated budgets.
    #[arg(long, value_delimiter = ',')]
    budgets: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    count_basis: Option<bool>,
    #[arg(long)]
    grid_resolution: Option<usize>,
    #[arg(long)]
    mc_samples: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ExperimentFile {
    name: Option<String>,
    trials: Option<usize>,
    budgets: Option<Vec<usize>>,
    seed: Option<u64>,
    count_basis: Option<bool>,
    grid_resolution: Option<usize>,
    mc_samples: Option<usize>,
    iterations: Option<usize>,
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Presample set size K.
    #[arg(long)]
    budget: Option<usize>,
    /// Number of simulated users.
    #[arg(long)]
    users: Option<usize>,
    /// Query rounds per user.
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct LearnFile {
    budget: Option<usize>,
    users: Option<usize>,
    iterations: Option<usize>,
    seed: Option<u64>,
    out_dir: Option<PathBuf>,
}

/// Failure classes with their exit codes.
#[derive(Debug)]
enum Failure {
    /// Bad flags, files or problem definitions: exit 2.
    Input(String),
    /// The computation itself failed: exit 3.
    Solver(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Solver(_) => 3,
        }
    }
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SamplerError> for Failure {
    fn from(e: SamplerError) -> Self {
        match e {
            SamplerError::BudgetTooSmall { .. }
            | SamplerError::InvalidTolerance(_)
            | SamplerError::DimensionTooSmall(_) => Failure::Input(e.to_string()),
            _ => Failure::Solver(e.to_string()),
        }
    }
}

impl From<MetricsError> for Failure {
    fn from(e: MetricsError) -> Self {
        match e {
            MetricsError::Solver(_) => Failure::Solver(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Config(_) | ExperimentError::Problem(_) => Failure::Input(e.to_string()),
            ExperimentError::Sampler(s) => s.into(),
            ExperimentError::Metrics(m) => m.into(),
            _ => Failure::Solver(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_config<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T, Failure> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("config {}: {e}", path.display())))
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Input(format!("missing required option --{flag}")))
}

fn timestamp_line() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    format!("# generated at unix time {secs}\n")
}

fn load_problem_file(path: &Path) -> Result<Problem, Failure> {
    load_problem(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn sample(args: SampleArgs) -> Result<(), Failure> {
    let file: SampleFile = load_config(args.config.as_deref())?;
    let problem_path = required(args.problem.or(file.problem), "problem")?;
    let method: Method = args
        .method
        .or(file.method)
        .unwrap_or_else(|| "mrps".into())
        .parse()
        .map_err(Failure::Input)?;
    let budget = args.budget.or(file.budget);
    let tolerance = args.tolerance.or(file.tolerance);
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let count_basis = args.count_basis.or(file.count_basis).unwrap_or(true);
    let max_samples = args.max_samples.or(file.max_samples).unwrap_or(10_000);
    let out = args.out.or(file.out);

    let problem = load_problem_file(&problem_path)?;
    let n = problem.dimension();
    let size = |k: usize| if count_basis { k } else { k + n };

    let report: SamplerReport = match (budget, tolerance, method) {
        (Some(_), Some(_), _) => return Err(Failure::Input("give either --budget or --tolerance, not both".into())),
        (None, None, _) => return Err(Failure::Input("one of --budget or --tolerance is required".into())),
        (None, Some(r), Method::Mrps) => mrps_sample_to_tolerance(&problem, r, max_samples)?,
        (None, Some(_), _) => return Err(Failure::Input("--tolerance needs --method mrps".into())),
        (Some(k), None, Method::Mrps) => mrps_sample(&problem, size(k))?,
        (Some(k), None, Method::UniformGrid) => uniform_sample(&problem, size(k), UniformMode::Grid, seed)?,
        (Some(k), None, Method::UniformRandom) => uniform_sample(&problem, size(k), UniformMode::Random, seed)?,
    };

    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &out {
        Some(path) => write(path, &json)?,
        None => print!("{json}"),
    }
    let bound = report.certified_bound.map_or("none".to_string(), |b| format!("{b}"));
    eprintln!(
        "{}: {} samples, certified bound {bound}, {} solver calls",
        report.method,
        report.omega.len(),
        report.solver_calls
    );
    Ok(())
}

fn evaluate(args: EvaluateArgs) -> Result<(), Failure> {
    let file: EvaluateFile = load_config(args.config.as_deref())?;
    let problem_path = required(args.problem.or(file.problem), "problem")?;
    let omega_path = required(args.omega.or(file.omega), "omega")?;
    let mc_samples = args.mc_samples.or(file.mc_samples).unwrap_or(20_000);
    let out = args.out.or(file.out);

    let problem = load_problem_file(&problem_path)?;
    let report: SamplerReport = serde_json::from_str(&read(&omega_path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", omega_path.display())))?;
    let omega: &SampleSet = &report.omega;
    let n = problem.dimension();
    if omega.dimension() != n {
        return Err(Failure::Input(format!(
            "sample set has {} objectives but the problem has {n}",
            omega.dimension()
        )));
    }
    let resolution = args
        .grid_resolution
        .or(file.grid_resolution)
        .unwrap_or_else(|| default_grid_resolution(n));

    let eval = GroundTruth::new(&problem, resolution)?.evaluate(omega)?;
    let seed = report.seed.unwrap_or(0);
    let hv = match default_reference(&problem.feasible_features()) {
        Some(r) => Some(hypervolume(&omega.features(), &r, mc_samples, seed)?),
        None => None,
    };
    let row = MetricsRow {
        method: report.method.to_string(),
        k: omega.len(),
        seed,
        max_regret: eval.max_regret,
        max_relative_regret: eval.max_relative_regret,
        hypervolume: hv,
        grid_resolution: resolution,
    };
    let csv = to_csv(&[row])?;
    match &out {
        Some(path) if path.exists() => {
            // header already present: append the data line only
            let line = csv.lines().nth(1).unwrap_or_default();
            let mut existing = read(path)?;
            if !existing.is_empty() && !existing.ends_with('\n') {
                existing.push('\n');
            }
            write(path, &format!("{existing}{line}\n"))?;
        }
        Some(path) => write(path, &(timestamp_line() + &csv))?,
        None => print!("{csv}"),
    }
    eprintln!(
        "max regret {} at {:?}; max relative regret {}; grid resolution {resolution}",
        eval.max_regret,
        eval.argmax_weight.as_slice(),
        eval.max_relative_regret
            .map_or("undefined".to_string(), |r| r.to_string())
    );
    Ok(())
}

fn write_experiment(config: &ExperimentConfig, out_dir: &Path) -> Result<(), Failure> {
    let output = run_experiment(config)?;
    fs::create_dir_all(out_dir).map_err(|e| Failure::Input(format!("cannot create {}: {e}", out_dir.display())))?;
    let stamp = timestamp_line();
    let trials_path = out_dir.join(format!("{}_trials.csv", config.name));
    let summary_path = out_dir.join(format!("{}_summary.csv", config.name));
    write(&trials_path, &(stamp.clone() + &output.trials_csv()?))?;
    write(&summary_path, &(stamp + &output.summary_csv()?))?;
    eprintln!(
        "{}: {} rows to {}, summary to {}",
        config.name,
        output.trial_count(),
        trials_path.display(),
        summary_path.display()
    );
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let file: ExperimentFile = load_config(args.config.as_deref())?;
    let name: ExperimentName = required(args.name.or(file.name), "name")?
        .parse()
        .map_err(Failure::Input)?;
    let defaults = ExperimentConfig::new(name);
    let config = ExperimentConfig {
        name,
        trials: args.trials.or(file.trials).unwrap_or(defaults.trials),
        budgets: args.budgets.or(file.budgets).unwrap_or(defaults.budgets),
        seed: args.seed.or(file.seed).unwrap_or(defaults.seed),
        count_basis: args.count_basis.or(file.count_basis).unwrap_or(defaults.count_basis),
        grid_resolution: args
            .grid_resolution
            .or(file.grid_resolution)
            .or(defaults.grid_resolution),
        mc_samples: args.mc_samples.or(file.mc_samples).unwrap_or(defaults.mc_samples),
        iterations: args.iterations.or(file.iterations).unwrap_or(defaults.iterations),
    };
    let out_dir = args.out_dir.or(file.out_dir).unwrap_or_else(|| "results".into());
    write_experiment(&config, &out_dir)
}

fn learn(args: LearnArgs) -> Result<(), Failure> {
    let file: LearnFile = load_config(args.config.as_deref())?;
    let defaults = ExperimentConfig::new(ExperimentName::Learning);
    let config = ExperimentConfig {
        trials: args.users.or(file.users).unwrap_or(defaults.trials),
        budgets: vec![args.budget.or(file.budget).unwrap_or(defaults.budgets[0])],
        seed: args.seed.or(file.seed).unwrap_or(defaults.seed),
        iterations: args
            .iterations
            .or(file.iterations)
            .unwrap_or(LearningConfig::DEFAULT_ITERATIONS),
        ..defaults
    };
    let out_dir = args.out_dir.or(file.out_dir).unwrap_or_else(|| "results".into());
    write_experiment(&config, &out_dir)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Input("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| Failure::Solver(e.to_string()))?;
    pool.install(|| match cli.command {
        Command::Sample(a) => sample(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Experiment(a) => experiment(a),
        Command::Learn(a) => learn(a),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Input(msg) | Failure::Solver(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
