//! Experiment execution and the command implementations behind the CLI.

mod config;
mod runner;

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analysis::{
    self, budget_grid, compute_ecdf, final_table, glicko2_rank, group_traces, linear_targets, pairwise_win_fraction,
    quantile_target, ErtResult, ErtRow, Glicko2, Glicko2State, PairingMode, RatedAlgorithm,
};
use crate::logger;
use crate::problems::oracle::{check_monotone, check_submodular_exhaustive, objective_table};
use crate::problems::{brute_force_optimum, ProblemError, ProblemKind};

pub use config::{default_cost_budget, AlgorithmConfig, InstanceFormat, ProblemConfig, RunConfig};
pub use runner::{execute, GridSummary, Job};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("instance {path}: {reason}")]
    Instance { path: PathBuf, reason: String },
    #[error(transparent)]
    Log(#[from] logger::LogError),
    #[error(transparent)]
    Analysis(#[from] analysis::AnalysisError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("{failed} of {total} runs failed")]
    RunsFailed { failed: usize, total: usize },
    #[error("{0}")]
    Runtime(String),
}

impl HarnessError {
    /// 2 for configuration and instance problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Instance { .. } => 2,
            _ => 1,
        }
    }
}

/// Command-line overrides of config keys.
#[derive(Clone, Debug, Default)]
pub struct RunOverrides {
    pub workers: Option<usize>,
    pub output: Option<PathBuf>,
    pub budget: Option<u64>,
    pub runs: Option<u64>,
    pub seed: Option<u64>,
    pub ioh_info: bool,
}

/// Loads `config_path`, applies `overrides` and runs the grid.
pub fn cmd_run(config_path: &Path, overrides: &RunOverrides) -> Result<GridSummary, HarnessError> {
    let mut config = RunConfig::load(config_path)?;
    if let Some(w) = overrides.workers {
        config.workers = w;
    }
    if let Some(o) = &overrides.output {
        config.output = o.clone();
    }
    if let Some(b) = overrides.budget {
        config.budget = b;
    }
    if let Some(r) = overrides.runs {
        config.runs = r;
    }
    if let Some(s) = overrides.seed {
        config.seed = s;
    }
    config.ioh_info |= overrides.ioh_info;
    config.validate()?;
    execute(&config)
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub target_quantile: f64,
    pub ecdf_targets: usize,
    /// ERT targets per instance, spaced linearly up to the quantile target.
    pub ert_targets: usize,
    pub budget_points: usize,
    pub games_per_pair: usize,
    pub seed: u64,
    pub pairing: PairingMode,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            target_quantile: 0.02,
            ecdf_targets: 25,
            ert_targets: 1,
            budget_points: 50,
            games_per_pair: 25,
            seed: 0,
            pairing: PairingMode::Paired,
        }
    }
}

/// Paths of the four tables written by [`cmd_analyze`].
#[derive(Clone, Debug)]
pub struct AnalysisOutput {
    pub ert: PathBuf,
    pub ecdf: PathBuf,
    pub glicko2: PathBuf,
    pub winfrac: PathBuf,
}

/// Reads the dataset below `root` and writes `ert.csv`, `ecdf.csv`,
/// `glicko2.csv` and `winfrac.csv` into `out_dir`. Nothing is written
/// unless every table could be computed.
pub fn cmd_analyze(root: &Path, out_dir: &Path, options: &AnalyzeOptions) -> Result<AnalysisOutput, HarnessError> {
    if !(0.0..=1.0).contains(&options.target_quantile) {
        return Err(HarnessError::Config(format!("target quantile {} is outside [0, 1]", options.target_quantile)));
    }
    if options.ecdf_targets == 0 || options.ert_targets == 0 {
        return Err(HarnessError::Config("target counts must be positive".into()));
    }
    let traces = logger::read_dataset(root)?;
    let max_budget = traces.iter().map(|t| t.budget).max().unwrap_or(1);
    let grouped = group_traces(traces);
    let finals = final_table(&grouped);

    let mut ert_rows = Vec::new();
    for (key, algs) in &grouped {
        let Some((_, target)) = quantile_target(&finals[key], options.target_quantile) else { continue };
        let worst = finals[key].values().flatten().copied().fold(f64::INFINITY, f64::min);
        for t in linear_targets(worst.min(target), target, options.ert_targets) {
            for (algorithm, ert, successes, runs) in ErtResult::new(algs, t).per_algorithm {
                ert_rows.push(ErtRow { instance: key.clone(), algorithm, target: t, ert, successes, runs });
            }
        }
    }
    let budgets = budget_grid(max_budget, options.budget_points);
    let curves = compute_ecdf(&grouped, &budgets, options.ecdf_targets);
    let names = analysis::algorithms(&finals);
    let ranked = if names.len() >= 2 {
        glicko2_rank(&finals, options.games_per_pair, &Glicko2::default(), &mut ChaCha8Rng::seed_from_u64(options.seed))?
    } else {
        names.iter().map(|n| RatedAlgorithm { algorithm: n.clone(), state: Glicko2State::default() }).collect()
    };
    let matrix = pairwise_win_fraction(&finals, options.pairing)?;

    std::fs::create_dir_all(out_dir).map_err(|e| HarnessError::Runtime(format!("{}: {e}", out_dir.display())))?;
    let out = AnalysisOutput {
        ert: out_dir.join("ert.csv"),
        ecdf: out_dir.join("ecdf.csv"),
        glicko2: out_dir.join("glicko2.csv"),
        winfrac: out_dir.join("winfrac.csv"),
    };
    analysis::write_ert_csv(&out.ert, &ert_rows)?;
    analysis::write_ecdf_csv(&out.ecdf, &curves)?;
    analysis::write_glicko2_csv(&out.glicko2, &ranked)?;
    analysis::write_winfrac_csv(&out.winfrac, &matrix)?;
    Ok(out)
}

/// Outcome of [`cmd_oracle`].
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub optimum: f64,
    pub optimum_point: String,
    /// `None` when the check does not apply.
    pub submodular: Option<bool>,
    pub monotone: Option<bool>,
    pub expected_monotone: bool,
}

impl OracleReport {
    /// A property check contradicts the theory for the problem kind.
    pub fn has_violation(&self) -> bool {
        self.submodular == Some(false) || (self.expected_monotone && self.monotone == Some(false))
    }

    pub fn render(&self) -> String {
        let yes_no = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        format!(
            "optimum: {} at {}\nsubmodular: {}, monotone: {}\n",
            logger::format_fitness(self.optimum),
            self.optimum_point,
            yes_no(self.submodular),
            yes_no(self.monotone)
        )
    }
}

pub const ORACLE_TOLERANCE: f64 = 1e-9;

/// Brute-force optimum and exhaustive property checks on a small instance.
pub fn cmd_oracle(problem: &ProblemConfig) -> Result<OracleReport, HarnessError> {
    let p = problem.build(0)?;
    let (point, optimum) = brute_force_optimum(&p)?;
    let (submodular, monotone) = if p.kind() == ProblemKind::Pwt {
        (None, None)
    } else {
        let table = objective_table(&p)?;
        (
            Some(check_submodular_exhaustive(&table, ORACLE_TOLERANCE).is_none()),
            Some(check_monotone(&table, ORACLE_TOLERANCE).is_none()),
        )
    };
    Ok(OracleReport {
        optimum,
        optimum_point: point.to_string(),
        submodular,
        monotone,
        expected_monotone: p.kind().is_monotone(),
    })
}
