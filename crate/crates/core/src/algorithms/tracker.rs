use serde::{Deserialize, Serialize};

use crate::problems::Problem;
use crate::rng::RngStream;
use crate::BitString;

/// Best-so-far fitness after a strict improvement at `evaluation`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Improvement {
    pub evaluation: u64,
    pub fitness: f64,
}

/// Budget-enforcing evaluation gate shared by all optimizers.
///
/// Every call to [`evaluate`](Tracker::evaluate) consumes one evaluation
/// (influence problems run all their simulations inside it). Once the
/// budget is spent further calls return `None`, which is how optimizers
/// terminate. Strict improvements of the best-so-far value are recorded.
pub struct Tracker<'a> {
    problem: &'a Problem,
    simulation: RngStream,
    budget: u64,
    used: u64,
    best: Option<(f64, BitString)>,
    records: Vec<Improvement>,
}

impl<'a> Tracker<'a> {
    pub fn new(problem: &'a Problem, budget: u64, simulation: RngStream) -> Self {
        Self { problem, simulation, budget, used: 0, best: None, records: Vec::new() }
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.problem.dimension()
    }

    #[inline]
    pub fn exhausted(&self) -> bool {
        self.used >= self.budget
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.budget - self.used
    }

    pub fn best_fitness(&self) -> Option<f64> {
        self.best.as_ref().map(|b| b.0)
    }

    /// Penalized fitness of `x`, or `None` when the budget is spent.
    pub fn evaluate(&mut self, x: &BitString) -> Option<f64> {
        if self.exhausted() {
            return None;
        }
        let fitness = self.problem.evaluate(x, &mut self.simulation).fitness;
        self.used += 1;
        if self.best.as_ref().is_none_or(|(b, _)| fitness > *b) {
            self.best = Some((fitness, x.clone()));
            self.records.push(Improvement { evaluation: self.used, fitness });
        }
        Some(fitness)
    }

    pub(super) fn finish(self) -> (Vec<Improvement>, Option<(f64, BitString)>, u64) {
        (self.records, self.best, self.used)
    }
}
