use rand::Rng;

use super::{AlgorithmSpec, Tracker};
use crate::rng::RngStream;
use crate::BitString;

/// Geometric cooling from `T0 = 1/ln(1/start_accept)` to `T_end = 2/ln n`
/// over a fixed number of evaluations.
///
/// A worsening by 1 is accepted with probability `start_accept` at the
/// start and `1/sqrt(n)` at the end.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaSchedule {
    pub t0: f64,
    pub gamma: f64,
}

impl SaSchedule {
    pub fn new(start_accept: f64, n: usize, budget: u64) -> Self {
        let t0 = 1.0 / (1.0 / start_accept).ln();
        let t_end = 2.0 / (n.max(2) as f64).ln();
        let gamma = (t_end / t0).powf(1.0 / budget.max(1) as f64);
        Self { t0, gamma }
    }

    /// Temperature after `k` evaluations.
    pub fn temperature(&self, k: u64) -> f64 {
        self.t0 * self.gamma.powf(k as f64)
    }
}

/// One annealing round of `budget` evaluations started at `x`.
pub(super) fn anneal(tracker: &mut Tracker, rng: &mut RngStream, mut x: BitString, budget: u64, start_accept: f64) {
    let n = tracker.dimension();
    let schedule = SaSchedule::new(start_accept, n, budget);
    let Some(mut fx) = tracker.evaluate(&x) else { return };
    for k in 2..=budget {
        if n == 0 {
            if tracker.evaluate(&x).is_none() {
                return;
            }
            continue;
        }
        let i = rng.random_range(0..n);
        x.flip(i);
        let Some(f) = tracker.evaluate(&x) else { return };
        let worsening = fx - f;
        if worsening <= 0.0 || rng.random::<f64>() < (-worsening / schedule.temperature(k)).exp() {
            fx = f;
        } else {
            x.flip(i);
        }
    }
}

/// Annealing restarted with budgets `round_factor · n · 2^i`.
pub(super) fn restarts(tracker: &mut Tracker, rng: &mut RngStream, spec: &AlgorithmSpec) {
    let n = tracker.dimension();
    let start_accept = spec.param("start_accept");
    let base = (spec.param("round_factor") * n as f64).max(1.0);
    let mut round = 0i32;
    while !tracker.exhausted() {
        let planned = (base * 2f64.powi(round)).min(u64::MAX as f64).round() as u64;
        let budget = planned.clamp(1, tracker.remaining());
        let x = BitString::random(n, rng);
        anneal(tracker, rng, x, budget, start_accept);
        round += 1;
    }
}
