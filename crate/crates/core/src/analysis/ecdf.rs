use std::collections::BTreeMap;

use super::Grouped;

/// Aggregated fraction of (run, target) pairs reached within each budget.
#[derive(Clone, Debug, PartialEq)]
pub struct EcdfCurve {
    pub algorithm: String,
    pub budgets: Vec<u64>,
    pub values: Vec<f64>,
}

/// `k` equally spaced values from `low` to `high`, both included.
pub fn linear_targets(low: f64, high: f64, k: usize) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![high],
        _ => (0..k).map(|i| if i == k - 1 { high } else { low + (high - low) * i as f64 / (k - 1) as f64 }).collect(),
    }
}

/// About `points` distinct budgets spaced logarithmically from 1 to `max`.
pub fn budget_grid(max: u64, points: usize) -> Vec<u64> {
    let max = max.max(1);
    let points = points.max(2);
    let mut grid: Vec<u64> = (0..points)
        .map(|i| (max as f64).powf(i as f64 / (points - 1) as f64).round() as u64)
        .map(|b| b.clamp(1, max))
        .collect();
    grid.push(max);
    grid.sort_unstable();
    grid.dedup();
    grid
}

/// ECDF curves aggregated over all instances of `grouped`.
///
/// Each instance gets `targets` values spaced linearly between the worst
/// and best final fitness of any run on it.
pub fn compute_ecdf(grouped: &Grouped, budgets: &[u64], targets: usize) -> Vec<EcdfCurve> {
    let mut hits: BTreeMap<&str, (Vec<u64>, u64)> = BTreeMap::new();
    for algs in grouped.values() {
        let finals = algs.values().flatten().map(|r| r.final_fitness);
        let (worst, best) = finals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), f| (lo.min(f), hi.max(f)));
        if !worst.is_finite() || !best.is_finite() {
            continue;
        }
        let grid = linear_targets(worst, best, targets);
        for (name, runs) in algs {
            let entry = hits.entry(name).or_insert_with(|| (vec![0; budgets.len()], 0));
            for run in runs {
                for &target in &grid {
                    entry.1 += 1;
                    if let Some(h) = run.hitting_time(target) {
                        let first = budgets.partition_point(|&b| b < h);
                        for c in &mut entry.0[first..] {
                            *c += 1;
                        }
                    }
                }
            }
        }
    }
    hits.into_iter()
        .map(|(name, (counts, pairs))| EcdfCurve {
            algorithm: name.to_string(),
            budgets: budgets.to_vec(),
            values: counts.iter().map(|&c| if pairs == 0 { 0.0 } else { c as f64 / pairs as f64 }).collect(),
        })
        .collect()
}
