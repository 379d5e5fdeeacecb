//! Cost models `c(x)` with a budget `B`.
//!
//! Deterministic models are linear, `c(x) = Σ c(v_i) x_i`, with per-element
//! costs fixed at construction (uniform, degree based, or explicit). The
//! chance-constrained models replace `c(x)` by a surrogate that adds a
//! dispersion term to the expected cost `a(x)`:
//!
//! * Chebyshev: `a(x) + δ · sqrt((1 - α) / (3α) · |x|_1)`
//! * Chernoff:  `a(x) + δ · sqrt(2 ln(1/α) · |x|_1)`
//!
//! Feasibility is the exact floating-point comparison `c(x) <= B`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::BitString;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CostError {
    #[error("search point has length {found}, cost model expects {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cost model has no chance-constraint parameters")]
    MissingChanceParams,
    #[error("alpha must lie in (0, 1/2], got {0}")]
    InvalidAlpha(f64),
    #[error("delta must be finite and non-negative, got {0}")]
    InvalidDelta(f64),
    #[error("budget must be finite and non-negative, got {0}")]
    InvalidBudget(f64),
    #[error("element cost {value} at position {index} must be finite and non-negative")]
    InvalidElementCost { index: usize, value: f64 },
    #[error("invalid cost specification `{spec}`: {reason}")]
    InvalidSpec { spec: String, reason: String },
}

/// How per-element (expected) costs are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseCost {
    /// `c(v) = 1`
    Uniform,
    /// `c(v) = 1 + deg(v)`
    LinearDegree,
    /// `c(v) = (1 + deg(v))^2`
    QuadraticDegree,
    /// Costs supplied by the instance (e.g. item weights).
    Explicit,
}

impl BaseCost {
    pub fn key(self) -> &'static str {
        match self {
            BaseCost::Uniform => "uniform",
            BaseCost::LinearDegree => "linear-degree",
            BaseCost::QuadraticDegree => "quadratic-degree",
            BaseCost::Explicit => "explicit",
        }
    }

    fn element_costs(self, degrees: &[usize]) -> Vec<f64> {
        degrees
            .iter()
            .map(|&d| match self {
                BaseCost::Uniform | BaseCost::Explicit => 1.0,
                BaseCost::LinearDegree => 1.0 + d as f64,
                BaseCost::QuadraticDegree => (1.0 + d as f64).powi(2),
            })
            .collect()
    }
}

/// Tail inequality behind a chance-constraint surrogate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChanceBound {
    Chebyshev,
    Chernoff,
}

impl ChanceBound {
    pub fn key(self) -> &'static str {
        match self {
            ChanceBound::Chebyshev => "chebyshev",
            ChanceBound::Chernoff => "chernoff",
        }
    }
}

/// Uncertainty `δ` of each element cost (uniform on `[a(v) - δ, a(v) + δ]`)
/// and the tolerated violation probability `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChanceParams {
    pub delta: f64,
    pub alpha: f64,
}

impl ChanceParams {
    pub fn new(delta: f64, alpha: f64) -> Result<Self, CostError> {
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(CostError::InvalidDelta(delta));
        }
        if !(alpha > 0.0 && alpha <= 0.5) {
            return Err(CostError::InvalidAlpha(alpha));
        }
        Ok(Self { delta, alpha })
    }

    /// Chebyshev dispersion term for a point with `ones` selected elements.
    pub fn chebyshev_margin(&self, ones: usize) -> f64 {
        self.delta * ((1.0 - self.alpha) / (3.0 * self.alpha) * ones as f64).sqrt()
    }

    /// Chernoff dispersion term for a point with `ones` selected elements.
    pub fn chernoff_margin(&self, ones: usize) -> f64 {
        self.delta * ((1.0 / self.alpha).ln() * 2.0 * ones as f64).sqrt()
    }

    /// Variance of the random cost, `|x|_1 · δ² / 3`.
    pub fn variance(&self, ones: usize) -> f64 {
        ones as f64 * self.delta * self.delta / 3.0
    }
}

/// Flat view over the six cost-model variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostKind {
    Uniform,
    LinearDegree,
    QuadraticDegree,
    Explicit,
    Chebyshev,
    Chernoff,
}

/// Maps a search point to a scalar cost and holds the budget.
#[derive(Clone, Debug, PartialEq)]
pub struct CostModel {
    base: BaseCost,
    element_costs: Vec<f64>,
    budget: f64,
    chance: Option<(ChanceBound, ChanceParams)>,
}

impl CostModel {
    pub fn uniform(n: usize, budget: f64) -> Result<Self, CostError> {
        Self::from_degrees(BaseCost::Uniform, &vec![0; n], budget)
    }

    /// Degree-derived costs; degrees are read once here.
    pub fn from_degrees(base: BaseCost, degrees: &[usize], budget: f64) -> Result<Self, CostError> {
        Self::build(base, base.element_costs(degrees), budget)
    }

    pub fn explicit(costs: Vec<f64>, budget: f64) -> Result<Self, CostError> {
        Self::build(BaseCost::Explicit, costs, budget)
    }

    fn build(base: BaseCost, element_costs: Vec<f64>, budget: f64) -> Result<Self, CostError> {
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(CostError::InvalidBudget(budget));
        }
        if let Some((index, &value)) = element_costs.iter().enumerate().find(|(_, c)| !(c.is_finite() && **c >= 0.0)) {
            return Err(CostError::InvalidElementCost { index, value });
        }
        Ok(Self { base, element_costs, budget, chance: None })
    }

    /// Turns the model into a chance-constraint surrogate; the current
    /// element costs become the expected costs `a(v)`.
    pub fn with_chance(mut self, bound: ChanceBound, params: ChanceParams) -> Result<Self, CostError> {
        let params = ChanceParams::new(params.delta, params.alpha)?;
        self.chance = Some((bound, params));
        Ok(self)
    }

    pub fn kind(&self) -> CostKind {
        match (self.chance, self.base) {
            (Some((ChanceBound::Chebyshev, _)), _) => CostKind::Chebyshev,
            (Some((ChanceBound::Chernoff, _)), _) => CostKind::Chernoff,
            (None, BaseCost::Uniform) => CostKind::Uniform,
            (None, BaseCost::LinearDegree) => CostKind::LinearDegree,
            (None, BaseCost::QuadraticDegree) => CostKind::QuadraticDegree,
            (None, BaseCost::Explicit) => CostKind::Explicit,
        }
    }

    pub fn base(&self) -> BaseCost {
        self.base
    }

    pub fn chance(&self) -> Option<(ChanceBound, ChanceParams)> {
        self.chance
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn dimension(&self) -> usize {
        self.element_costs.len()
    }

    pub fn element_costs(&self) -> &[f64] {
        &self.element_costs
    }

    fn check_len(&self, x: &BitString) -> Result<(), CostError> {
        if x.len() != self.element_costs.len() {
            return Err(CostError::LengthMismatch { expected: self.element_costs.len(), found: x.len() });
        }
        Ok(())
    }

    fn chance_params(&self) -> Result<ChanceParams, CostError> {
        self.chance.map(|(_, p)| p).ok_or(CostError::MissingChanceParams)
    }

    /// `a(x) = Σ a(v_i) x_i`
    pub fn expected_cost(&self, x: &BitString) -> Result<f64, CostError> {
        self.check_len(x)?;
        Ok(x.iter_ones().map(|i| self.element_costs[i]).sum())
    }

    pub fn cost_chebyshev(&self, x: &BitString) -> Result<f64, CostError> {
        let params = self.chance_params()?;
        Ok(self.expected_cost(x)? + params.chebyshev_margin(x.count_ones()))
    }

    pub fn cost_chernoff(&self, x: &BitString) -> Result<f64, CostError> {
        let params = self.chance_params()?;
        Ok(self.expected_cost(x)? + params.chernoff_margin(x.count_ones()))
    }

    /// Cost under the model's own kind.
    pub fn cost(&self, x: &BitString) -> Result<f64, CostError> {
        match self.chance {
            None => self.expected_cost(x),
            Some((ChanceBound::Chebyshev, _)) => self.cost_chebyshev(x),
            Some((ChanceBound::Chernoff, _)) => self.cost_chernoff(x),
        }
    }

    #[inline]
    pub fn is_feasible(&self, cost: f64) -> bool {
        cost <= self.budget
    }
}

/// Textual cost-model selection, e.g. `uniform:budget=10` or
/// `chebyshev:delta=0.5,alpha=0.1,base=linear-degree,budget=500`.
///
/// Chance kinds default to a uniform base. A missing budget is filled in by
/// the problem's default for the chosen base.
#[derive(Clone, Debug, PartialEq)]
pub struct CostSpec {
    pub base: BaseCost,
    pub chance: Option<(ChanceBound, ChanceParams)>,
    pub budget: Option<f64>,
}

impl CostSpec {
    pub fn deterministic(base: BaseCost, budget: Option<f64>) -> Self {
        Self { base, chance: None, budget }
    }

    /// Builds the model from node degrees (undirected degree or out-degree).
    pub fn build(&self, degrees: &[usize], default_budget: f64) -> Result<CostModel, CostError> {
        let model = CostModel::from_degrees(self.base, degrees, self.budget.unwrap_or(default_budget))?;
        match self.chance {
            Some((bound, params)) => model.with_chance(bound, params),
            None => Ok(model),
        }
    }
}

impl FromStr for CostSpec {
    type Err = CostError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let bad = |reason: String| CostError::InvalidSpec { spec: spec.to_string(), reason };
        let (kind, args) = match spec.trim().split_once(':') {
            Some((k, a)) => (k.trim(), a.trim()),
            None => (spec.trim(), ""),
        };
        let mut base = None;
        let mut chance = None;
        match kind {
            "uniform" => base = Some(BaseCost::Uniform),
            "linear-degree" => base = Some(BaseCost::LinearDegree),
            "quadratic-degree" => base = Some(BaseCost::QuadraticDegree),
            "chebyshev" => chance = Some(ChanceBound::Chebyshev),
            "chernoff" => chance = Some(ChanceBound::Chernoff),
            other => return Err(bad(format!("unknown cost kind `{other}`"))),
        }
        let (mut delta, mut alpha, mut budget) = (None, None, None);
        for pair in args.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair.split_once('=').ok_or_else(|| bad(format!("expected key=value, got `{pair}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let number = || value.parse::<f64>().map_err(|_| bad(format!("`{key}` needs a number, got `{value}`")));
            match key {
                "budget" => budget = Some(number()?),
                "delta" if chance.is_some() => delta = Some(number()?),
                "alpha" if chance.is_some() => alpha = Some(number()?),
                "base" if chance.is_some() => {
                    base = Some(match value {
                        "uniform" => BaseCost::Uniform,
                        "linear-degree" => BaseCost::LinearDegree,
                        "quadratic-degree" => BaseCost::QuadraticDegree,
                        other => return Err(bad(format!("unknown base `{other}`"))),
                    })
                }
                other => return Err(bad(format!("unexpected key `{other}` for `{kind}`"))),
            }
        }
        if let Some(b) = budget {
            if !(b.is_finite() && b >= 0.0) {
                return Err(CostError::InvalidBudget(b));
            }
        }
        let chance = match chance {
            Some(bound) => {
                let delta = delta.ok_or_else(|| bad("missing `delta`".into()))?;
                let alpha = alpha.ok_or_else(|| bad("missing `alpha`".into()))?;
                Some((bound, ChanceParams::new(delta, alpha)?))
            }
            None => None,
        };
        Ok(Self { base: base.unwrap_or(BaseCost::Uniform), chance, budget })
    }
}

impl fmt::Display for CostSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut args = Vec::new();
        match self.chance {
            Some((bound, p)) => {
                f.write_str(bound.key())?;
                args.push(format!("delta={}", p.delta));
                args.push(format!("alpha={}", p.alpha));
                args.push(format!("base={}", self.base.key()));
            }
            None => f.write_str(self.base.key())?,
        }
        if let Some(b) = self.budget {
            args.push(format!("budget={b}"));
        }
        if !args.is_empty() {
            write!(f, ":{}", args.join(","))?;
        }
        Ok(())
    }
}
