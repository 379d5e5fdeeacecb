//! The twelve baseline optimizers.
//!
//! Every optimizer maximizes the penalized fitness `f'` of a [`Problem`]
//! for an exact number of evaluations and reports a [`RunTrace`]. All of
//! them start from a uniformly random point. The elitist ones replace the
//! parent by an offspring of at least equal fitness.

mod annealing;
mod lambda;
mod local;
mod oll;
mod tracker;
mod umda;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::operators::{sample_binomial_gt0, PowerLaw};
use crate::problems::Problem;
use crate::rng::{Purpose, RngStream};
use crate::BitString;

pub use annealing::SaSchedule;
pub use tracker::{Improvement, Tracker};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgorithmError {
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("algorithm `{algorithm}` has no parameter `{param}`")]
    UnknownParameter { algorithm: String, param: String },
    #[error("parameter `{param}` = {value} is out of range: {reason}")]
    InvalidParameter { param: String, value: f64, reason: &'static str },
    #[error("evaluation budget must be at least 1")]
    InvalidBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmName {
    OnePlusOneEa,
    FastGa,
    OllEa,
    TwoRateEa,
    NormEa,
    VarEa,
    Ghc,
    RandomSearch,
    Rls,
    SaAuto,
    SarsAuto,
    Umda,
}

impl AlgorithmName {
    pub const ALL: [AlgorithmName; 12] = [
        AlgorithmName::OnePlusOneEa,
        AlgorithmName::FastGa,
        AlgorithmName::OllEa,
        AlgorithmName::TwoRateEa,
        AlgorithmName::NormEa,
        AlgorithmName::VarEa,
        AlgorithmName::Ghc,
        AlgorithmName::RandomSearch,
        AlgorithmName::Rls,
        AlgorithmName::SaAuto,
        AlgorithmName::SarsAuto,
        AlgorithmName::Umda,
    ];

    pub fn key(self) -> &'static str {
        match self {
            AlgorithmName::OnePlusOneEa => "1+1-ea",
            AlgorithmName::FastGa => "fast-ga",
            AlgorithmName::OllEa => "oll-ea",
            AlgorithmName::TwoRateEa => "2rate-ea",
            AlgorithmName::NormEa => "norm-ea",
            AlgorithmName::VarEa => "var-ea",
            AlgorithmName::Ghc => "ghc",
            AlgorithmName::RandomSearch => "rs",
            AlgorithmName::Rls => "rls",
            AlgorithmName::SaAuto => "sa-auto",
            AlgorithmName::SarsAuto => "sars-auto",
            AlgorithmName::Umda => "umda",
        }
    }

    /// Parameter names with their defaults.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            AlgorithmName::OnePlusOneEa => &[("mutation_rate", 1.0)],
            AlgorithmName::FastGa => &[("beta", 1.5)],
            AlgorithmName::OllEa => &[("lambda", 10.0), ("update_factor", 1.5), ("failure_exponent", 0.25)],
            AlgorithmName::TwoRateEa => &[("lambda", 10.0), ("rate", 2.0), ("follow_best", 0.75), ("min_rate", 2.0)],
            AlgorithmName::NormEa => &[("lambda", 10.0), ("rate", 2.0)],
            AlgorithmName::VarEa => &[("lambda", 10.0), ("rate", 2.0), ("variance_decay", 0.98)],
            AlgorithmName::Ghc | AlgorithmName::RandomSearch | AlgorithmName::Rls => &[],
            AlgorithmName::SaAuto => &[("start_accept", 0.1)],
            AlgorithmName::SarsAuto => &[("start_accept", 0.1), ("round_factor", 1.0)],
            AlgorithmName::Umda => &[("population", 50.0), ("selected", 25.0)],
        }
    }

    /// Parent fitness never decreases.
    pub fn is_elitist(self) -> bool {
        !matches!(
            self,
            AlgorithmName::RandomSearch | AlgorithmName::SaAuto | AlgorithmName::SarsAuto | AlgorithmName::Umda
        )
    }
}

impl fmt::Display for AlgorithmName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for AlgorithmName {
    type Err = AlgorithmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|a| a.key() == s).ok_or_else(|| AlgorithmError::UnknownAlgorithm(s.to_string()))
    }
}

/// An algorithm together with a complete parameter set.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmSpec {
    name: AlgorithmName,
    params: BTreeMap<String, f64>,
}

impl AlgorithmSpec {
    pub fn new(name: AlgorithmName) -> Self {
        let params = name.defaults().iter().map(|&(k, v)| (k.to_string(), v)).collect();
        Self { name, params }
    }

    /// Spec with defaults for a CLI key such as `fast-ga`.
    pub fn parse(key: &str) -> Result<Self, AlgorithmError> {
        Ok(Self::new(key.parse()?))
    }

    pub fn with_param(self, key: &str, value: f64) -> Result<Self, AlgorithmError> {
        self.with_params([(key, value)])
    }

    /// Sets several parameters and validates the result as a whole.
    pub fn with_params<'k>(mut self, values: impl IntoIterator<Item = (&'k str, f64)>) -> Result<Self, AlgorithmError> {
        for (key, value) in values {
            let Some(slot) = self.params.get_mut(key) else {
                return Err(AlgorithmError::UnknownParameter { algorithm: self.name.key().into(), param: key.into() });
            };
            *slot = value;
        }
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), AlgorithmError> {
        for (key, &value) in &self.params {
            let invalid = |reason| AlgorithmError::InvalidParameter { param: key.clone(), value, reason };
            if !value.is_finite() {
                return Err(invalid("must be finite"));
            }
            let ok = match key.as_str() {
                "lambda" | "population" | "selected" => value >= 1.0 && value.fract() == 0.0,
                "update_factor" => value > 1.0,
                "follow_best" | "start_accept" => value > 0.0 && value < 1.0,
                "variance_decay" => value > 0.0 && value <= 1.0,
                _ => value > 0.0,
            };
            if !ok {
                return Err(invalid("outside the admissible range"));
            }
        }
        if self.name == AlgorithmName::Umda && self.param("selected") > self.param("population") {
            return Err(AlgorithmError::InvalidParameter {
                param: "selected".into(),
                value: self.param("selected"),
                reason: "cannot exceed the population size",
            });
        }
        Ok(())
    }

    pub fn name(&self) -> AlgorithmName {
        self.name
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    /// Value of a parameter of this algorithm.
    ///
    /// # Panics
    /// If `key` is not a parameter of the algorithm.
    pub fn param(&self, key: &str) -> f64 {
        self.params[key]
    }
}

/// Record of one run: improvements of the best-so-far fitness and the
/// final best point.
#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    pub algorithm: String,
    pub problem_id: u32,
    pub problem_name: String,
    pub instance_id: u32,
    pub dimension: usize,
    pub seed: u64,
    pub budget: u64,
    /// Evaluations actually consumed.
    pub evaluations: u64,
    pub records: Vec<Improvement>,
    pub final_fitness: f64,
    /// Absent for traces read back from disk.
    pub final_point: Option<BitString>,
}

impl RunTrace {
    /// Best-so-far fitness after `t` evaluations, `None` before the first.
    pub fn best_at(&self, t: u64) -> Option<f64> {
        let idx = self.records.partition_point(|r| r.evaluation <= t);
        idx.checked_sub(1).map(|i| self.records[i].fitness)
    }

    /// First evaluation at which the best-so-far fitness reaches `target`.
    pub fn hitting_time(&self, target: f64) -> Option<u64> {
        self.records.iter().find(|r| r.fitness >= target).map(|r| r.evaluation)
    }

    /// Checks the trace invariants; returns a description of the first
    /// violation.
    pub fn validate(&self) -> Result<(), String> {
        let first = self.records.first().ok_or("trace has no improvement records")?;
        if first.evaluation != 1 {
            return Err(format!("first record at evaluation {} instead of 1", first.evaluation));
        }
        for w in self.records.windows(2) {
            if w[1].evaluation <= w[0].evaluation || w[1].fitness <= w[0].fitness {
                return Err(format!("records not strictly increasing at evaluation {}", w[1].evaluation));
            }
        }
        let last = self.records.last().expect("non-empty");
        if last.evaluation > self.evaluations {
            return Err("record beyond the consumed evaluations".into());
        }
        if last.fitness != self.final_fitness {
            return Err("final fitness differs from the last record".into());
        }
        Ok(())
    }
}

/// Runs `spec` on `problem` for exactly `budget` evaluations.
///
/// Algorithm decisions and influence simulations draw from two separate
/// streams derived from `seed`, so identical arguments give identical
/// traces.
pub fn run(spec: &AlgorithmSpec, problem: &Problem, budget: u64, seed: u64) -> Result<RunTrace, AlgorithmError> {
    run_labeled(spec, spec.name().key(), problem, budget, seed)
}

/// [`run`] with a custom algorithm label in the trace.
pub fn run_labeled(
    spec: &AlgorithmSpec,
    label: &str,
    problem: &Problem,
    budget: u64,
    seed: u64,
) -> Result<RunTrace, AlgorithmError> {
    if budget == 0 {
        return Err(AlgorithmError::InvalidBudget);
    }
    spec.validate()?;
    let mut rng = RngStream::new(seed, Purpose::Algorithm);
    let mut tracker = Tracker::new(problem, budget, RngStream::new(seed, Purpose::Simulation));
    let n = problem.dimension();
    match spec.name() {
        AlgorithmName::OnePlusOneEa => {
            let p = (spec.param("mutation_rate") / n as f64).min(1.0);
            one_plus_one(&mut tracker, &mut rng, |rng| sample_binomial_gt0(n, p, rng));
        }
        AlgorithmName::FastGa => {
            let law = PowerLaw::new(n, spec.param("beta"));
            one_plus_one(&mut tracker, &mut rng, |rng| law.sample(rng));
        }
        AlgorithmName::Rls => one_plus_one(&mut tracker, &mut rng, |_| 1),
        AlgorithmName::OllEa => oll::run(&mut tracker, &mut rng, spec),
        AlgorithmName::TwoRateEa => lambda::two_rate(&mut tracker, &mut rng, spec),
        AlgorithmName::NormEa => lambda::normalized(&mut tracker, &mut rng, spec, None),
        AlgorithmName::VarEa => lambda::normalized(&mut tracker, &mut rng, spec, Some(spec.param("variance_decay"))),
        AlgorithmName::Ghc => local::greedy_hill_climber(&mut tracker, &mut rng),
        AlgorithmName::RandomSearch => local::random_search(&mut tracker, &mut rng),
        AlgorithmName::SaAuto => {
            let x = BitString::random(n, &mut rng);
            annealing::anneal(&mut tracker, &mut rng, x, budget, spec.param("start_accept"));
        }
        AlgorithmName::SarsAuto => annealing::restarts(&mut tracker, &mut rng, spec),
        AlgorithmName::Umda => umda::run(&mut tracker, &mut rng, spec),
    }
    let (records, best, evaluations) = tracker.finish();
    let (final_fitness, point) = best.expect("budget >= 1 guarantees an evaluation");
    Ok(RunTrace {
        algorithm: label.to_string(),
        problem_id: problem.kind().id(),
        problem_name: problem.kind().name().to_string(),
        instance_id: problem.instance_id(),
        dimension: n,
        seed,
        budget,
        evaluations,
        records,
        final_fitness,
        final_point: Some(point),
    })
}

/// Elitist (1+1) scheme flipping `flips(rng)` distinct bits per offspring.
fn one_plus_one<F>(tracker: &mut Tracker, rng: &mut RngStream, mut flips: F)
where
    F: FnMut(&mut RngStream) -> usize,
{
    let mut parent = BitString::random(tracker.dimension(), rng);
    let Some(mut parent_fitness) = tracker.evaluate(&parent) else { return };
    let mut child = parent.clone();
    loop {
        let l = flips(rng).min(child.len());
        crate::operators::flip_in_place(&mut child, l, rng);
        let Some(f) = tracker.evaluate(&child) else { return };
        if f >= parent_fitness {
            parent.clone_from(&child);
            parent_fitness = f;
        } else {
            child.clone_from(&parent);
        }
    }
}
