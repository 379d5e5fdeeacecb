use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use rayon::prelude::*;

use super::{HarnessError, RunConfig};
use crate::algorithms::{run_labeled, AlgorithmSpec, RunTrace};
use crate::logger::{self, ExperimentMeta};
use crate::problems::Problem;
use crate::rng::derive_run_seed;

/// One run of the grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub algorithm: usize,
    pub problem: usize,
    pub run: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, Default)]
pub struct GridSummary {
    pub traces_written: usize,
    pub failures: Vec<String>,
    pub files: Vec<PathBuf>,
}

fn seed_for(config: &RunConfig, label: &str, problem: &Problem, run: u64) -> u64 {
    derive_run_seed(config.seed, label, problem.kind().key(), u64::from(problem.instance_id()), run)
}

/// Runs every (algorithm, problem, run) cell and writes the datasets.
///
/// Traces go to `<output>/<algorithm label>/<suite>/...`. The files of a
/// cell are rewritten from scratch in run order, so the output does not
/// depend on the number of workers. Runs that panic are reported and left
/// out of the data.
pub fn execute(config: &RunConfig) -> Result<GridSummary, HarnessError> {
    let problems: Vec<Problem> = config.problems.iter().enumerate().map(|(i, p)| p.build(i)).collect::<Result<_, _>>()?;
    let mut seen = BTreeMap::new();
    for (i, p) in problems.iter().enumerate() {
        let key = (p.kind().id(), p.dimension(), p.instance_id());
        if let Some(j) = seen.insert(key, i) {
            return Err(HarnessError::Config(format!(
                "problems {} and {} share kind, dimension and instance id; set distinct `instance_id`s",
                j + 1,
                i + 1
            )));
        }
    }
    let specs: Vec<(AlgorithmSpec, &str)> =
        config.algorithms.iter().map(|a| Ok((a.spec()?, a.label()))).collect::<Result<_, HarnessError>>()?;

    let mut jobs = Vec::new();
    for (ai, (_, label)) in specs.iter().enumerate() {
        for (pi, problem) in problems.iter().enumerate() {
            for run in 0..config.runs {
                jobs.push(Job { algorithm: ai, problem: pi, run, seed: seed_for(config, label, problem, run) });
            }
        }
    }
    log::info!("running {} jobs", jobs.len());

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| HarnessError::Runtime(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<RunTrace, String>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let (spec, label) = &specs[job.algorithm];
                let problem = &problems[job.problem];
                let outcome =
                    catch_unwind(AssertUnwindSafe(|| run_labeled(spec, label, problem, config.budget, job.seed)));
                match outcome {
                    Ok(Ok(trace)) => Ok(trace),
                    Ok(Err(e)) => Err(e.to_string()),
                    Err(panic) => Err(panic_message(panic.as_ref())),
                }
            })
            .collect()
    });

    if config.ioh_info {
        for (_, label) in &specs {
            for p in &problems {
                let info = config.output.join(label).join(&config.suite).join(format!(
                    "IOHprofiler_f{}_{}.info",
                    p.kind().id(),
                    p.kind().name()
                ));
                remove_if_present(&info)?;
            }
        }
    }

    let mut summary = GridSummary::default();
    let runs = config.runs as usize;
    for (cell, chunk) in jobs.chunks(runs).zip(results.chunks(runs)) {
        let (spec, label) = &specs[cell[0].algorithm];
        let problem = &problems[cell[0].problem];
        let root = config.output.join(label);
        let mut traces = Vec::with_capacity(runs);
        for (job, result) in cell.iter().zip(chunk) {
            match result {
                Ok(t) => traces.push(t.clone()),
                Err(msg) => {
                    let m = format!("{label} on {} instance {} run {}: {msg}", problem.kind().key(), problem.instance_id(), job.run);
                    log::error!("{m}");
                    summary.failures.push(m);
                }
            }
        }
        let Some(first) = traces.first() else { continue };
        let meta = ExperimentMeta::from_traces(&config.suite, spec.params().clone(), &traces);
        let dat = logger::trace_path(&root, &config.suite, first);
        remove_if_present(&dat)?;
        remove_if_present(&meta.path(&root))?;
        for t in &traces {
            logger::write_trace(t, &root, &config.suite)?;
        }
        summary.files.push(dat);
        summary.files.push(logger::write_meta(&meta, &root)?);
        if config.ioh_info {
            logger::write_ioh_info(&meta, &root)?;
        }
        summary.traces_written += traces.len();
    }
    if !summary.failures.is_empty() {
        return Err(HarnessError::RunsFailed { failed: summary.failures.len(), total: jobs.len() });
    }
    Ok(summary)
}

fn remove_if_present(path: &std::path::Path) -> Result<(), HarnessError> {
    match fs::remove_file(path) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(()),
        Err(e) => Err(HarnessError::Runtime(format!("{}: {e}", path.display()))),
    }
}

fn panic_message(panic: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = panic.downcast_ref::<&str>() {
        format!("panicked: {s}")
    } else if let Some(s) = panic.downcast_ref::<String>() {
        format!("panicked: {s}")
    } else {
        "panicked".into()
    }
}
