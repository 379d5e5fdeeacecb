use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use super::HarnessError;
use crate::algorithms::AlgorithmSpec;
use crate::constraints::{BaseCost, CostSpec};
use crate::instance::{parse_edge_list, parse_gset, parse_snap_weighted, parse_ttp, Indexing};
use crate::problems::{Penalty, Problem, ProblemKind, DEFAULT_SIMULATIONS};

/// Experiment description read from a TOML file.
///
/// ```toml
/// suite = "smoke"
/// output = "results"
/// runs = 30
/// budget = 100000
/// seed = 1
/// workers = 0
///
/// [[problems]]
/// kind = "max-coverage"
/// instance = "star.txt"
/// cost = "uniform:budget=1"
///
/// [[algorithms]]
/// name = "1+1-ea"
/// ```
///
/// Relative instance paths and the output directory are resolved against
/// the directory of the config file. `workers = 0` uses all cores.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_suite")]
    pub suite: String,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default = "default_runs")]
    pub runs: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub workers: usize,
    /// Also write IOHprofiler `.info` index files.
    #[serde(default)]
    pub ioh_info: bool,
    pub problems: Vec<ProblemConfig>,
    pub algorithms: Vec<AlgorithmConfig>,
}

fn default_suite() -> String {
    "submodular".into()
}

fn default_output() -> PathBuf {
    "results".into()
}

fn default_runs() -> u64 {
    30
}

fn default_budget() -> u64 {
    100_000
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceFormat {
    EdgeList,
    WeightedEdgeList,
    Gset,
    Snap,
    Ttp,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub kind: String,
    pub instance: PathBuf,
    /// Defaults: edge list for coverage, G-Set for max-cut, SNAP for
    /// influence, TTP for packing while traveling.
    pub format: Option<InstanceFormat>,
    /// Cost model such as `linear-degree` or
    /// `chebyshev:delta=1,alpha=0.1,budget=20`; coverage and influence only.
    pub cost: Option<String>,
    pub simulations: Option<usize>,
    pub instance_id: Option<u32>,
    /// SNAP node ids start at 1.
    #[serde(default)]
    pub one_indexed: bool,
    pub penalty_weight: Option<f64>,
    pub penalty_exponent: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmConfig {
    pub name: String,
    pub label: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl AlgorithmConfig {
    pub fn spec(&self) -> Result<AlgorithmSpec, HarnessError> {
        AlgorithmSpec::parse(&self.name)
            .and_then(|s| s.with_params(self.params.iter().map(|(k, &v)| (k.as_str(), v))))
            .map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or(&self.name)
    }
}

/// Budget used when a cost spec does not name one.
pub fn default_cost_budget(kind: ProblemKind, base: BaseCost) -> f64 {
    match (kind, base) {
        (_, BaseCost::Uniform) => 10.0,
        (ProblemKind::MaxInfluence, BaseCost::LinearDegree) => 200.0,
        (_, BaseCost::LinearDegree) => 500.0,
        _ => 40_000.0,
    }
}

impl RunConfig {
    /// Reads and validates a config file. Paths are made absolute relative
    /// to the file's directory.
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut config: RunConfig =
            toml::from_str(&text).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        config.output = base.join(&config.output);
        for p in &mut config.problems {
            p.instance = base.join(&p.instance);
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        if self.budget == 0 {
            return bad("budget must be at least 1".into());
        }
        if self.problems.is_empty() || self.algorithms.is_empty() {
            return bad("at least one problem and one algorithm are required".into());
        }
        if self.suite.is_empty() || self.suite.contains(['/', '\\']) {
            return bad(format!("invalid suite name `{}`", self.suite));
        }
        let mut labels = std::collections::BTreeSet::new();
        for a in &self.algorithms {
            a.spec()?;
            if !labels.insert(a.label()) {
                return bad(format!("duplicate algorithm label `{}`", a.label()));
            }
            if a.label().is_empty() || a.label().contains(['/', '\\']) {
                return bad(format!("invalid algorithm label `{}`", a.label()));
            }
        }
        Ok(())
    }
}

fn read_instance(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|e| HarnessError::Instance { path: path.to_path_buf(), reason: e.to_string() })
}

impl ProblemConfig {
    /// Loads the instance and builds the problem. `position` (0-based) is
    /// the default instance id minus one.
    pub fn build(&self, position: usize) -> Result<Problem, HarnessError> {
        let kind: ProblemKind = self.kind.parse().map_err(|e: crate::problems::ProblemError| HarnessError::Config(e.to_string()))?;
        let text = read_instance(&self.instance)?;
        let parse_err = |e: crate::instance::ParseError| HarnessError::Instance { path: self.instance.clone(), reason: e.to_string() };
        let config_err = |e: String| HarnessError::Config(format!("{}: {e}", self.instance.display()));
        let cost_spec = match &self.cost {
            Some(c) => Some(c.parse::<CostSpec>().map_err(|e| config_err(e.to_string()))?),
            None => None,
        };
        let format = self.format.clone().unwrap_or(match kind {
            ProblemKind::MaxCoverage => InstanceFormat::EdgeList,
            ProblemKind::MaxCut => InstanceFormat::Gset,
            ProblemKind::MaxInfluence => InstanceFormat::Snap,
            ProblemKind::Pwt => InstanceFormat::Ttp,
        });
        let undirected = |format: &InstanceFormat| match format {
            InstanceFormat::EdgeList => parse_edge_list(&text, false).map_err(parse_err),
            InstanceFormat::WeightedEdgeList => parse_edge_list(&text, true).map_err(parse_err),
            InstanceFormat::Gset => parse_gset(&text).map_err(parse_err),
            _ => Err(config_err(format!("format {format:?} does not describe an undirected graph"))),
        };
        let cost_for = |degrees: &[usize]| {
            let spec = cost_spec.clone().unwrap_or(CostSpec::deterministic(BaseCost::Uniform, None));
            spec.build(degrees, default_cost_budget(kind, spec.base)).map_err(|e| config_err(e.to_string()))
        };
        let no_cost = || match &self.cost {
            Some(_) => Err(config_err(format!("{} takes no cost model", kind.key()))),
            None => Ok(()),
        };
        if self.simulations.is_some() && kind != ProblemKind::MaxInfluence {
            return Err(config_err("`simulations` applies to max-influence only".into()));
        }
        let problem = match kind {
            ProblemKind::MaxCoverage => {
                let g = undirected(&format)?;
                let cost = cost_for(&g.degrees())?;
                Problem::max_coverage(Arc::new(g), cost).map_err(|e| config_err(e.to_string()))?
            }
            ProblemKind::MaxCut => {
                no_cost()?;
                Problem::max_cut(Arc::new(undirected(&format)?))
            }
            ProblemKind::MaxInfluence => {
                if !matches!(format, InstanceFormat::Snap) {
                    return Err(config_err("max-influence needs a snap instance".into()));
                }
                let indexing = if self.one_indexed { Indexing::OneBased } else { Indexing::ZeroBased };
                let (g, _warnings) = parse_snap_weighted(&text, indexing).map_err(parse_err)?;
                let cost = cost_for(g.out_degrees())?;
                let sims = self.simulations.unwrap_or(DEFAULT_SIMULATIONS);
                Problem::max_influence(Arc::new(g), cost, sims).map_err(|e| config_err(e.to_string()))?
            }
            ProblemKind::Pwt => {
                no_cost()?;
                if !matches!(format, InstanceFormat::Ttp) {
                    return Err(config_err("pwt needs a ttp instance".into()));
                }
                Problem::pwt(Arc::new(parse_ttp(&text).map_err(parse_err)?))
            }
        };
        let problem = match (self.penalty_weight, self.penalty_exponent) {
            (None, None) => problem,
            (w, e) => {
                let (weight, exponent) = (w.unwrap_or(1.0), e.unwrap_or(1.0));
                if !(weight > 0.0 && exponent > 0.0 && weight.is_finite() && exponent.is_finite()) {
                    return Err(config_err("penalty weight and exponent must be positive".into()));
                }
                problem.with_penalty(Penalty::Weighted { weight, exponent })
            }
        };
        Ok(problem.with_instance_id(self.instance_id.unwrap_or(position as u32 + 1)))
    }
}
