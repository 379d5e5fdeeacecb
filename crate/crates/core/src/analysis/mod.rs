//! Fixed-target and fixed-budget statistics over sets of run traces.

mod ecdf;
mod ert;
mod glicko;
mod report;
mod winfrac;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algorithms::RunTrace;

pub use ecdf::{budget_grid, compute_ecdf, linear_targets, EcdfCurve};
pub use ert::{compute_ert, quantile, quantile_target, ErtResult};
pub use glicko::{glicko2_rank, Glicko2, Glicko2State, Outcome, RatedAlgorithm};
pub use report::{write_ecdf_csv, write_ert_csv, write_glicko2_csv, write_winfrac_csv, ErtRow};
pub use winfrac::{pairwise_win_fraction, PairingMode, WinMatrix};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("no runs to analyze")]
    Empty,
    #[error("at least two algorithms are required, found {0}")]
    TooFewAlgorithms(usize),
    #[error("{instance}: `{first}` has {first_runs} runs but `{second}` has {second_runs}")]
    UnequalRuns { instance: String, first: String, first_runs: usize, second: String, second_runs: usize },
    #[error("{path}: {source}")]
    Csv { path: std::path::PathBuf, source: csv::Error },
}

/// One benchmark instance: a problem at a dimension with an instance id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstanceKey {
    pub problem_id: u32,
    pub problem_name: String,
    pub dimension: usize,
    pub instance_id: u32,
}

impl InstanceKey {
    pub fn of(trace: &RunTrace) -> Self {
        Self {
            problem_id: trace.problem_id,
            problem_name: trace.problem_name.clone(),
            dimension: trace.dimension,
            instance_id: trace.instance_id,
        }
    }
}

impl std::fmt::Display for InstanceKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f{}_{} d{} i{}", self.problem_id, self.problem_name, self.dimension, self.instance_id)
    }
}

/// Runs grouped by instance, then by algorithm, in input order.
pub type Grouped = BTreeMap<InstanceKey, BTreeMap<String, Vec<RunTrace>>>;

/// Final fitness values grouped by instance, then by algorithm.
pub type FinalTable = BTreeMap<InstanceKey, BTreeMap<String, Vec<f64>>>;

pub fn group_traces(traces: impl IntoIterator<Item = RunTrace>) -> Grouped {
    let mut grouped = Grouped::new();
    for t in traces {
        grouped.entry(InstanceKey::of(&t)).or_default().entry(t.algorithm.clone()).or_default().push(t);
    }
    grouped
}

pub fn final_table(grouped: &Grouped) -> FinalTable {
    grouped
        .iter()
        .map(|(key, algs)| {
            let finals = algs.iter().map(|(a, runs)| (a.clone(), runs.iter().map(|r| r.final_fitness).collect())).collect();
            (key.clone(), finals)
        })
        .collect()
}

/// Sorted names of all algorithms in `table`.
pub fn algorithms(table: &FinalTable) -> Vec<String> {
    let mut names: Vec<String> = table.values().flat_map(|algs| algs.keys().cloned()).collect();
    names.sort();
    names.dedup();
    names
}

#[cfg(test)]
pub(crate) fn test_trace(alg: &str, records: &[(u64, f64)], budget: u64) -> RunTrace {
    RunTrace {
        algorithm: alg.into(),
        problem_id: 1,
        problem_name: "P".into(),
        instance_id: 1,
        dimension: 5,
        seed: 0,
        budget,
        evaluations: budget,
        records: records.iter().map(|&(evaluation, fitness)| crate::algorithms::Improvement { evaluation, fitness }).collect(),
        final_fitness: records.last().expect("records").1,
        final_point: None,
    }
}
