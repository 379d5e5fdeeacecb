//! Benchmark objectives with penalized scalar fitness.
//!
//! Each evaluation yields `g(x) = (f'(x), c(x))`: the penalized fitness and
//! the cost, plus a feasibility flag. Coverage and influence use
//! `f'(x) = f(x)` when `c(x) <= B` and `B - c(x)` otherwise. Packing while
//! traveling subtracts the rent for the slowest tour, `R · T(v_min)`, from
//! the violation term so that every feasible point beats every infeasible
//! one. Max cut is unconstrained.

mod influence;
pub mod oracle;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::constraints::{CostError, CostModel};
use crate::instance::{DirectedGraph, TtpInstance, UndirectedGraph};
use crate::rng::RngStream;
use crate::BitString;

pub use influence::{exact_influence_expectation, exact_influence_table, simulate_ic, MAX_EXACT_ARCS};

/// Largest dimension handled by exhaustive enumeration.
pub const MAX_BRUTE_FORCE_DIM: usize = 20;

/// Default number of cascade simulations per influence evaluation.
pub const DEFAULT_SIMULATIONS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProblemError {
    #[error("{what} = {size} exceeds the exhaustive-enumeration limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("cost model dimension {cost} does not match instance dimension {instance}")]
    DimensionMismatch { instance: usize, cost: usize },
    #[error("simulation count must be at least 1")]
    NoSimulations,
    #[error("unknown problem kind `{0}`")]
    UnknownKind(String),
    #[error("operation not supported: {0}")]
    Unsupported(&'static str),
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// `g(x)` plus feasibility.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub fitness: f64,
    pub cost: f64,
    pub feasible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    MaxCoverage,
    MaxInfluence,
    MaxCut,
    Pwt,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] =
        [ProblemKind::MaxCoverage, ProblemKind::MaxInfluence, ProblemKind::MaxCut, ProblemKind::Pwt];

    /// Configuration / CLI key.
    pub fn key(self) -> &'static str {
        match self {
            ProblemKind::MaxCoverage => "max-coverage",
            ProblemKind::MaxInfluence => "max-influence",
            ProblemKind::MaxCut => "max-cut",
            ProblemKind::Pwt => "pwt",
        }
    }

    /// Name used in dataset paths.
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::MaxCoverage => "MaxCoverage",
            ProblemKind::MaxInfluence => "MaxInfluence",
            ProblemKind::MaxCut => "MaxCut",
            ProblemKind::Pwt => "PackWhileTravel",
        }
    }

    /// Numeric problem id used in dataset paths.
    pub fn id(self) -> u32 {
        match self {
            ProblemKind::MaxCut => 2000,
            ProblemKind::MaxCoverage => 2100,
            ProblemKind::MaxInfluence => 2200,
            ProblemKind::Pwt => 2300,
        }
    }

    pub fn is_monotone(self) -> bool {
        matches!(self, ProblemKind::MaxCoverage | ProblemKind::MaxInfluence)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for ProblemKind {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|k| k.key() == s).ok_or_else(|| ProblemError::UnknownKind(s.to_string()))
    }
}

/// Shape of the constraint-violation term.
///
/// `Standard` is `B - c(x)`. `Weighted` is the generic composition
/// `-w · (c(x) - B)^e`, which equals `Standard` for `w = 1, e = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Penalty {
    #[default]
    Standard,
    Weighted { weight: f64, exponent: f64 },
}

impl Penalty {
    #[inline]
    fn violation(self, cost: f64, budget: f64) -> f64 {
        match self {
            Penalty::Standard => budget - cost,
            Penalty::Weighted { weight, exponent } => -weight * (cost - budget).powf(exponent),
        }
    }
}

#[derive(Clone, Debug)]
enum Objective {
    Coverage(Arc<UndirectedGraph>),
    Influence { graph: Arc<DirectedGraph>, simulations: usize },
    Cut(Arc<UndirectedGraph>),
    Pwt { instance: Arc<TtpInstance>, slowest_time: f64 },
}

/// A benchmark problem: objective, instance data and cost model.
///
/// Problems are immutable; influence evaluation draws its noise from a
/// caller-owned simulation stream.
#[derive(Clone, Debug)]
pub struct Problem {
    kind: ProblemKind,
    objective: Objective,
    cost: Option<CostModel>,
    penalty: Penalty,
    instance_id: u32,
}

impl Problem {
    pub fn max_coverage(graph: Arc<UndirectedGraph>, cost: CostModel) -> Result<Self, ProblemError> {
        check_dims(graph.node_count(), &cost)?;
        Ok(Self::assemble(ProblemKind::MaxCoverage, Objective::Coverage(graph), Some(cost)))
    }

    pub fn max_influence(graph: Arc<DirectedGraph>, cost: CostModel, simulations: usize) -> Result<Self, ProblemError> {
        check_dims(graph.node_count(), &cost)?;
        if simulations == 0 {
            return Err(ProblemError::NoSimulations);
        }
        Ok(Self::assemble(ProblemKind::MaxInfluence, Objective::Influence { graph, simulations }, Some(cost)))
    }

    pub fn max_cut(graph: Arc<UndirectedGraph>) -> Self {
        Self::assemble(ProblemKind::MaxCut, Objective::Cut(graph), None)
    }

    /// The knapsack constraint uses the item weights and the vehicle
    /// capacity as budget.
    pub fn pwt(instance: Arc<TtpInstance>) -> Self {
        let weights = instance.items().iter().map(|i| i.weight as f64).collect();
        let cost = CostModel::explicit(weights, instance.capacity()).expect("validated instance");
        let slowest_time = instance.total_distance() / instance.v_min();
        Self::assemble(ProblemKind::Pwt, Objective::Pwt { instance, slowest_time }, Some(cost))
    }

    fn assemble(kind: ProblemKind, objective: Objective, cost: Option<CostModel>) -> Self {
        Self { kind, objective, cost, penalty: Penalty::Standard, instance_id: 1 }
    }

    pub fn with_penalty(mut self, penalty: Penalty) -> Self {
        self.penalty = penalty;
        self
    }

    pub fn with_instance_id(mut self, id: u32) -> Self {
        self.instance_id = id;
        self
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn instance_id(&self) -> u32 {
        self.instance_id
    }

    pub fn cost_model(&self) -> Option<&CostModel> {
        self.cost.as_ref()
    }

    pub fn simulations(&self) -> Option<usize> {
        match &self.objective {
            Objective::Influence { simulations, .. } => Some(*simulations),
            _ => None,
        }
    }

    pub fn dimension(&self) -> usize {
        match &self.objective {
            Objective::Coverage(g) | Objective::Cut(g) => g.node_count(),
            Objective::Influence { graph, .. } => graph.node_count(),
            Objective::Pwt { instance, .. } => instance.item_count(),
        }
    }

    /// `R · T(v_min)` for packing while traveling.
    pub fn slowest_tour_rent(&self) -> Option<f64> {
        match &self.objective {
            Objective::Pwt { instance, slowest_time } => Some(instance.rent() * slowest_time),
            _ => None,
        }
    }

    /// Evaluates `x`. Influence problems consume `sim_rng`; all other kinds
    /// leave it untouched.
    ///
    /// # Panics
    /// If `x.len()` differs from [`dimension`](Self::dimension).
    pub fn evaluate(&self, x: &BitString, sim_rng: &mut RngStream) -> Evaluation {
        assert_eq!(x.len(), self.dimension(), "search point length");
        match &self.objective {
            Objective::Coverage(graph) => self.penalized(x, |x| coverage_count(graph, x) as f64),
            Objective::Influence { graph, simulations } => {
                self.penalized(x, |x| estimate_influence(graph, x, *simulations, sim_rng))
            }
            Objective::Cut(graph) => Evaluation { fitness: cut_weight(graph, x), cost: 0.0, feasible: true },
            Objective::Pwt { instance, slowest_time } => self.evaluate_pwt(instance, *slowest_time, x),
        }
    }

    /// Like [`evaluate`](Self::evaluate) but noise-free: influence uses the
    /// exact expectation (small instances only).
    pub fn evaluate_exact(&self, x: &BitString) -> Result<Evaluation, ProblemError> {
        match &self.objective {
            Objective::Influence { graph, .. } => {
                let model = self.cost.as_ref().expect("influence has a cost model");
                let cost = model.cost(x)?;
                if !model.is_feasible(cost) {
                    let fitness = self.penalty.violation(cost, model.budget());
                    return Ok(Evaluation { fitness, cost, feasible: false });
                }
                let seeds: Vec<usize> = x.iter_ones().collect();
                Ok(Evaluation { fitness: exact_influence_expectation(graph, &seeds)?, cost, feasible: true })
            }
            _ => Ok(self.evaluate(x, &mut RngStream::from_seed(0))),
        }
    }

    fn penalized(&self, x: &BitString, objective: impl FnOnce(&BitString) -> f64) -> Evaluation {
        let model = self.cost.as_ref().expect("constrained problem has a cost model");
        let cost = model.cost(x).expect("dimension checked on construction");
        if model.is_feasible(cost) {
            Evaluation { fitness: objective(x), cost, feasible: true }
        } else {
            Evaluation { fitness: self.penalty.violation(cost, model.budget()), cost, feasible: false }
        }
    }

    fn evaluate_pwt(&self, instance: &TtpInstance, slowest_time: f64, x: &BitString) -> Evaluation {
        let (profit, weight, time) = pwt_terms(instance, x);
        let cost = weight as f64;
        let budget = instance.capacity();
        if cost <= budget {
            Evaluation { fitness: profit as f64 - instance.rent() * time, cost, feasible: true }
        } else {
            let fitness = self.penalty.violation(cost, budget) - instance.rent() * slowest_time;
            Evaluation { fitness, cost, feasible: false }
        }
    }

    /// Unconstrained objective `f(x)` (no penalty), noise-free.
    ///
    /// Returns `None` for packing while traveling, whose objective is
    /// undefined once the carried weight exceeds the capacity.
    pub fn raw_objective(&self, x: &BitString) -> Result<Option<f64>, ProblemError> {
        Ok(match &self.objective {
            Objective::Coverage(g) => Some(coverage_count(g, x) as f64),
            Objective::Cut(g) => Some(cut_weight(g, x)),
            Objective::Influence { graph, .. } => {
                let seeds: Vec<usize> = x.iter_ones().collect();
                Some(exact_influence_expectation(graph, &seeds)?)
            }
            Objective::Pwt { .. } => None,
        })
    }

    pub(crate) fn influence_graph(&self) -> Option<&DirectedGraph> {
        match &self.objective {
            Objective::Influence { graph, .. } => Some(graph),
            _ => None,
        }
    }
}

fn check_dims(n: usize, cost: &CostModel) -> Result<(), ProblemError> {
    if cost.dimension() != n {
        return Err(ProblemError::DimensionMismatch { instance: n, cost: cost.dimension() });
    }
    Ok(())
}

/// `|N(V'(x))|`: selected nodes together with all their neighbors.
pub fn coverage_count(graph: &UndirectedGraph, x: &BitString) -> usize {
    let mut covered = vec![false; graph.node_count()];
    let mut count = 0;
    let mut mark = |v: usize| {
        if !covered[v] {
            covered[v] = true;
            count += 1;
        }
    };
    for v in x.iter_ones() {
        mark(v);
        for &(u, _) in graph.neighbors(v) {
            mark(u);
        }
    }
    count
}

/// Total weight of edges with exactly one endpoint selected.
pub fn cut_weight(graph: &UndirectedGraph, x: &BitString) -> f64 {
    graph.edges().iter().filter(|e| x.get(e.u) != x.get(e.v)).map(|e| e.weight).sum()
}

/// Mean cascade size over `simulations` independent propagations.
pub fn estimate_influence(graph: &DirectedGraph, x: &BitString, simulations: usize, rng: &mut RngStream) -> f64 {
    if x.count_ones() == 0 {
        return 0.0;
    }
    let seeds: Vec<usize> = x.iter_ones().collect();
    let mut active = vec![false; graph.node_count()];
    let mut scratch = Vec::new();
    let total: usize = (0..simulations)
        .map(|_| influence::simulate_into(graph, seeds.iter().copied(), rng, &mut active, &mut scratch))
        .sum();
    total as f64 / simulations as f64
}

/// Profit, carried weight and travel time of the identity route.
///
/// The weight carried on leg `i` includes every item picked at cities
/// `1..=i`.
pub fn pwt_terms(instance: &TtpInstance, x: &BitString) -> (u64, u64, f64) {
    let nu = instance.nu();
    let mut profit = 0u64;
    let mut weight = 0u64;
    let mut time = 0.0;
    for (city, &d) in instance.distances().iter().enumerate() {
        for j in instance.items_at(city) {
            if x.get(j) {
                let item = instance.items()[j];
                profit += item.profit;
                weight += item.weight;
            }
        }
        time += d / (instance.v_max() - nu * weight as f64);
    }
    (profit, weight, time)
}

/// Best feasible point by exhaustive enumeration (`dimension <= 20`).
///
/// Influence problems are scored with the exact expectation. Ties keep the
/// point with the smallest bitmask.
pub fn brute_force_optimum(problem: &Problem) -> Result<(BitString, f64), ProblemError> {
    let n = problem.dimension();
    if n > MAX_BRUTE_FORCE_DIM {
        return Err(ProblemError::TooLarge { what: "dimension", size: n, limit: MAX_BRUTE_FORCE_DIM });
    }
    let influence = problem.influence_graph().map(exact_influence_table).transpose()?;
    let mut sim = RngStream::from_seed(0);
    let mut best: Option<(u64, f64)> = None;
    for mask in 0..1u64 << n {
        let x = BitString::from_mask(mask, n);
        let fitness = match &influence {
            Some(table) => {
                let model = problem.cost_model().expect("influence has a cost model");
                if !model.is_feasible(model.cost(&x)?) {
                    continue;
                }
                table[mask as usize]
            }
            None => {
                let e = problem.evaluate(&x, &mut sim);
                if !e.feasible {
                    continue;
                }
                e.fitness
            }
        };
        if best.is_none_or(|(_, f)| fitness > f) {
            best = Some((mask, fitness));
        }
    }
    let (mask, fitness) = best.expect("the empty selection is always feasible");
    Ok((BitString::from_mask(mask, n), fitness))
}
