use std::collections::BTreeMap;

use crate::algorithms::RunTrace;

/// Expected running time of `traces` for reaching fitness `target`.
///
/// Successful runs contribute their hitting time, unsuccessful ones their
/// full evaluation count. Infinite if no run succeeds.
pub fn compute_ert(traces: &[RunTrace], target: f64) -> f64 {
    let mut spent = 0u64;
    let mut successes = 0usize;
    for t in traces {
        match t.hitting_time(target) {
            Some(h) => {
                spent += h;
                successes += 1;
            }
            None => spent += t.evaluations,
        }
    }
    if successes == 0 {
        f64::INFINITY
    } else {
        spent as f64 / successes as f64
    }
}

/// ERT of each algorithm on one instance for one target.
#[derive(Clone, Debug, PartialEq)]
pub struct ErtResult {
    pub target: f64,
    /// `(algorithm, ert, successes, runs)`.
    pub per_algorithm: Vec<(String, f64, usize, usize)>,
}

impl ErtResult {
    pub fn new(algorithms: &BTreeMap<String, Vec<RunTrace>>, target: f64) -> Self {
        let per_algorithm = algorithms
            .iter()
            .map(|(name, runs)| {
                let successes = runs.iter().filter(|r| r.hitting_time(target).is_some()).count();
                (name.clone(), compute_ert(runs, target), successes, runs.len())
            })
            .collect();
        Self { target, per_algorithm }
    }
}

/// Type-1 (inverse empirical CDF) quantile: the `ceil(q·N)`-th smallest
/// value, with `q = 0` giving the minimum.
///
/// # Panics
/// If `values` is empty.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty(), "quantile of an empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let rank = ((q.clamp(0.0, 1.0) * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// The `q`-quantile of the final fitness values of the best algorithm,
/// which is the one with the highest median final fitness (ties: higher
/// mean, then name). Returns `(algorithm, target)`, or `None` when no
/// algorithm has runs.
pub fn quantile_target(finals: &BTreeMap<String, Vec<f64>>, q: f64) -> Option<(String, f64)> {
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let best = finals
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(name, v)| (name, median(v), mean(v)))
        .reduce(|a, b| if (b.1, b.2) > (a.1, a.2) { b } else { a })?;
    Some((best.0.clone(), quantile(&finals[best.0], q)))
}
