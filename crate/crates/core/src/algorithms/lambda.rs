use rand::Rng;

use super::{AlgorithmSpec, Tracker};
use crate::operators::{flip_in_place, sample_binomial_gt0, sample_normal_flip_count};
use crate::rng::RngStream;
use crate::BitString;

/// Best offspring of a generation, first one on ties.
struct Best {
    fitness: f64,
    point: BitString,
    tag: f64,
}

fn offer(best: &mut Option<Best>, child: &BitString, fitness: f64, tag: f64) {
    match best {
        Some(b) if b.fitness >= fitness => {}
        Some(b) => {
            b.fitness = fitness;
            b.point.clone_from(child);
            b.tag = tag;
        }
        None => *best = Some(Best { fitness, point: child.clone(), tag }),
    }
}

/// (1+λ) EA with two competing mutation rates `r/2` and `2r`.
pub(super) fn two_rate(tracker: &mut Tracker, rng: &mut RngStream, spec: &AlgorithmSpec) {
    let n = tracker.dimension();
    let lambda = spec.param("lambda") as usize;
    let follow_best = spec.param("follow_best");
    let lo = spec.param("min_rate");
    let hi = lo.max(n as f64 / 4.0);
    let mut rate = spec.param("rate").clamp(lo, hi);
    let mut parent = BitString::random(n, rng);
    let Some(mut parent_fitness) = tracker.evaluate(&parent) else { return };
    let mut child = parent.clone();
    loop {
        let mut best = None;
        for k in 0..lambda {
            let r = if k < lambda / 2 { rate / 2.0 } else { rate * 2.0 };
            let l = sample_binomial_gt0(n, (r / n as f64).min(1.0), rng);
            child.clone_from(&parent);
            flip_in_place(&mut child, l, rng);
            let Some(f) = tracker.evaluate(&child) else { return };
            offer(&mut best, &child, f, r);
        }
        let best = best.expect("lambda >= 1");
        if best.fitness >= parent_fitness {
            parent = best.point;
            parent_fitness = best.fitness;
        }
        rate = if rng.random::<f64>() < follow_best {
            best.tag
        } else if rng.random::<bool>() {
            rate / 2.0
        } else {
            rate * 2.0
        };
        rate = rate.clamp(lo, hi);
    }
}

/// (1+λ) EA with normally distributed flip counts centred at `r`.
///
/// With `decay = Some(F)` the variance is scaled by `F^c`, `c` counting
/// generations since the last strict improvement of the parent.
pub(super) fn normalized(tracker: &mut Tracker, rng: &mut RngStream, spec: &AlgorithmSpec, decay: Option<f64>) {
    let n = tracker.dimension();
    let lambda = spec.param("lambda") as usize;
    let mut rate = spec.param("rate").clamp(1.0, n.max(1) as f64);
    let mut stagnation = 0i32;
    let mut parent = BitString::random(n, rng);
    let Some(mut parent_fitness) = tracker.evaluate(&parent) else { return };
    let mut child = parent.clone();
    loop {
        let factor = decay.map_or(1.0, |f| f.powi(stagnation));
        let mut best = None;
        for _ in 0..lambda {
            let l = if n == 0 { 0 } else { sample_normal_flip_count(rate, n, factor, rng) };
            child.clone_from(&parent);
            flip_in_place(&mut child, l, rng);
            let Some(f) = tracker.evaluate(&child) else { return };
            offer(&mut best, &child, f, l as f64);
        }
        let best = best.expect("lambda >= 1");
        if best.fitness > parent_fitness {
            stagnation = 0;
        } else {
            stagnation = stagnation.saturating_add(1);
        }
        if best.fitness >= parent_fitness {
            parent = best.point;
            parent_fitness = best.fitness;
        }
        rate = best.tag.max(1.0);
    }
}
