use super::{AlgorithmSpec, Tracker};
use crate::operators::{biased_uniform_crossover, flip_in_place, sample_binomial_gt0};
use crate::rng::RngStream;
use crate::BitString;

/// Self-adjusting (1+(λ,λ)) EA.
///
/// Crossover offspring identical to the parent or to the selected mutant
/// are not evaluated again.
pub(super) fn run(tracker: &mut Tracker, rng: &mut RngStream, spec: &AlgorithmSpec) {
    let n = tracker.dimension();
    let factor = spec.param("update_factor");
    let failure = factor.powf(spec.param("failure_exponent"));
    let upper = n.max(1) as f64;
    let mut lambda = spec.param("lambda").clamp(1.0, upper);
    let mut parent = BitString::random(n, rng);
    let Some(mut parent_fitness) = tracker.evaluate(&parent) else { return };
    let mut mutant = parent.clone();
    loop {
        let count = (lambda.round() as usize).max(1);
        let l = sample_binomial_gt0(n, (lambda / n as f64).min(1.0), rng);
        let mut best_mutant: Option<(f64, BitString)> = None;
        for _ in 0..count {
            mutant.clone_from(&parent);
            flip_in_place(&mut mutant, l, rng);
            let Some(f) = tracker.evaluate(&mutant) else { return };
            if best_mutant.as_ref().is_none_or(|(b, _)| f > *b) {
                best_mutant = Some((f, mutant.clone()));
            }
        }
        let (mutant_fitness, best_mutant) = best_mutant.expect("count >= 1");

        let mut candidate: Option<(f64, BitString)> = None;
        for _ in 0..count {
            let y = biased_uniform_crossover(&parent, &best_mutant, 1.0 / lambda, rng).expect("equal lengths");
            let f = if y == parent {
                continue;
            } else if y == best_mutant {
                mutant_fitness
            } else {
                match tracker.evaluate(&y) {
                    Some(f) => f,
                    None => return,
                }
            };
            if candidate.as_ref().is_none_or(|(b, _)| f > *b) {
                candidate = Some((f, y));
            }
        }

        match candidate {
            Some((f, y)) if f >= parent_fitness => {
                if f > parent_fitness {
                    lambda = (lambda / factor).max(1.0);
                } else {
                    lambda = (lambda * failure).min(upper);
                }
                parent = y;
                parent_fitness = f;
            }
            _ => lambda = (lambda * failure).min(upper),
        }
    }
}
