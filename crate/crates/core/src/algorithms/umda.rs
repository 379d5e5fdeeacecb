use rand::seq::SliceRandom;
use rand::Rng;

use super::{AlgorithmSpec, Tracker};
use crate::rng::RngStream;
use crate::BitString;

/// Univariate marginal distribution algorithm with truncation selection.
pub(super) fn run(tracker: &mut Tracker, rng: &mut RngStream, spec: &AlgorithmSpec) {
    let n = tracker.dimension();
    let size = spec.param("population") as usize;
    let selected = spec.param("selected") as usize;
    let (lo, hi) = if n >= 2 { (1.0 / n as f64, 1.0 - 1.0 / n as f64) } else { (0.5, 0.5) };
    let mut marginals = vec![0.5; n];
    let mut population: Vec<(f64, BitString)> = Vec::with_capacity(size);
    loop {
        population.clear();
        for _ in 0..size {
            let x = BitString::from_bits(marginals.iter().map(|&q| rng.random::<f64>() < q).collect());
            let Some(f) = tracker.evaluate(&x) else { return };
            population.push((f, x));
        }
        population.shuffle(rng);
        population.sort_by(|a, b| b.0.total_cmp(&a.0));
        let chosen = &population[..selected];
        for (j, q) in marginals.iter_mut().enumerate() {
            let ones = chosen.iter().filter(|(_, x)| x.get(j)).count();
            *q = (ones as f64 / selected as f64).clamp(lo, hi);
        }
    }
}
