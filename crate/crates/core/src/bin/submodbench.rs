use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use submodbench::analysis::PairingMode;
use submodbench::harness::{self, AnalyzeOptions, HarnessError, InstanceFormat, ProblemConfig, RunOverrides};

/// Benchmark iterative search heuristics on submodular problems.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment grid of a TOML config.
    Run {
        config: PathBuf,
        /// Worker threads (0 = all cores).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        runs: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write IOHprofiler .info index files.
        #[arg(long)]
        ioh_info: bool,
    },
    /// Compute ERT, ECDF, glicko-2 and win-fraction tables of a dataset.
    Analyze {
        dataset: PathBuf,
        /// Directory for the CSV tables [default: the dataset directory].
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0.02)]
        target_quantile: f64,
        #[arg(long, default_value_t = 25)]
        ecdf_targets: usize,
        #[arg(long, default_value_t = 1)]
        ert_targets: usize,
        #[arg(long, default_value_t = 50)]
        budget_points: usize,
        #[arg(long, default_value_t = 25)]
        games: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare every run with every run instead of run k with run k.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Brute-force optimum and submodularity checks on a small instance.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct OracleArgs {
    /// max-coverage, max-influence, max-cut or pwt.
    #[arg(long)]
    problem: String,
    #[arg(long)]
    instance: PathBuf,
    /// edge-list, weighted-edge-list, gset, snap or ttp.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    cost: Option<String>,
    #[arg(long)]
    simulations: Option<usize>,
    #[arg(long)]
    one_indexed: bool,
}

fn parse_format(s: &str) -> Result<InstanceFormat, HarnessError> {
    Ok(match s {
        "edge-list" => InstanceFormat::EdgeList,
        "weighted-edge-list" => InstanceFormat::WeightedEdgeList,
        "gset" => InstanceFormat::Gset,
        "snap" => InstanceFormat::Snap,
        "ttp" => InstanceFormat::Ttp,
        other => return Err(HarnessError::Config(format!("unknown format `{other}`"))),
    })
}

fn dispatch(command: Command) -> Result<bool, HarnessError> {
    match command {
        Command::Run { config, workers, output, budget, runs, seed, ioh_info } => {
            let overrides = RunOverrides { workers, output, budget, runs, seed, ioh_info };
            let summary = harness::cmd_run(&config, &overrides)?;
            println!("wrote {} traces to {} files", summary.traces_written, summary.files.len() / 2);
            Ok(true)
        }
        Command::Analyze {
            dataset,
            output,
            target_quantile,
            ecdf_targets,
            ert_targets,
            budget_points,
            games,
            seed,
            all_pairs,
        } => {
            let options = AnalyzeOptions {
                target_quantile,
                ecdf_targets,
                ert_targets,
                budget_points,
                games_per_pair: games,
                seed,
                pairing: if all_pairs { PairingMode::AllPairs } else { PairingMode::Paired },
            };
            let out_dir = output.unwrap_or_else(|| dataset.clone());
            let out = harness::cmd_analyze(&dataset, &out_dir, &options)?;
            for p in [out.ert, out.ecdf, out.glicko2, out.winfrac] {
                println!("{}", p.display());
            }
            Ok(true)
        }
        Command::Oracle(args) => {
            let problem = ProblemConfig {
                kind: args.problem,
                instance: args.instance,
                format: args.format.as_deref().map(parse_format).transpose()?,
                cost: args.cost,
                simulations: args.simulations,
                instance_id: None,
                one_indexed: args.one_indexed,
                penalty_weight: None,
                penalty_exponent: None,
            };
            let report = harness::cmd_oracle(&problem)?;
            print!("{}", report.render());
            Ok(!report.has_violation())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("property violation");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
