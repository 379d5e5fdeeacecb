use std::collections::HashSet;
use std::fmt::Write as _;

use super::text::{data_lines, parse_f64, parse_i64};
use super::{ParseError, ParseWarning};

/// A directed arc with its activation probability for the independent
/// cascade model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
    pub prob: f64,
}

/// Node-id convention of an input file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Indexing {
    #[default]
    ZeroBased,
    OneBased,
}

/// Directed graph with per-arc propagation probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedGraph {
    node_count: usize,
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<usize>>,
    in_degree: Vec<usize>,
    out_degree: Vec<usize>,
}

impl DirectedGraph {
    /// Builds a graph from 0-based `(from, to, weight)` triples, setting
    /// `prob = min(1, weight / indegree(to))`.
    ///
    /// Returns the graph with one warning per clamped arc.
    pub fn from_weighted_arcs<I>(node_count: usize, arcs: I) -> Result<(Self, Vec<ParseWarning>), ParseError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let raw: Vec<_> = arcs.into_iter().map(|(u, v, w)| (0, u, v, w)).collect();
        Self::build(node_count, raw)
    }

    /// Builds a graph whose arc probabilities are given directly. The stored
    /// weight equals the probability.
    pub fn from_probabilities<I>(node_count: usize, arcs: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let arcs: Vec<_> = arcs.into_iter().collect();
        let mut seen = HashSet::new();
        for &(u, v, p) in &arcs {
            check_arc(0, node_count, u, v, &mut seen)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(ParseError::InvalidWeight { line: 0, weight: p });
            }
        }
        let arcs = arcs.into_iter().map(|(from, to, p)| Arc { from, to, weight: p, prob: p }).collect();
        Ok(Self::index(node_count, arcs))
    }

    fn build(node_count: usize, raw: Vec<(usize, usize, usize, f64)>) -> Result<(Self, Vec<ParseWarning>), ParseError> {
        let mut seen = HashSet::new();
        let mut in_degree = vec![0usize; node_count];
        for &(line, u, v, w) in &raw {
            check_arc(line, node_count, u, v, &mut seen)?;
            if !(w > 0.0 && w.is_finite()) {
                return Err(ParseError::InvalidWeight { line, weight: w });
            }
            in_degree[v] += 1;
        }
        let mut warnings = Vec::new();
        let arcs = raw
            .into_iter()
            .map(|(line, from, to, weight)| {
                let raw_prob = weight / in_degree[to] as f64;
                if raw_prob > 1.0 {
                    log::warn!("line {line}: arc {from}->{to} probability {raw_prob} clamped to 1");
                    warnings.push(ParseWarning::ClampedProbability { line, from, to, raw: raw_prob });
                }
                Arc { from, to, weight, prob: raw_prob.min(1.0) }
            })
            .collect();
        Ok((Self::index(node_count, arcs), warnings))
    }

    fn index(node_count: usize, arcs: Vec<Arc>) -> Self {
        let mut out_arcs = vec![Vec::new(); node_count];
        let mut in_degree = vec![0; node_count];
        let mut out_degree = vec![0; node_count];
        for (i, a) in arcs.iter().enumerate() {
            out_arcs[a.from].push(i);
            out_degree[a.from] += 1;
            in_degree[a.to] += 1;
        }
        Self { node_count, arcs, out_arcs, in_degree, out_degree }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Indices into [`arcs`](Self::arcs) of the arcs leaving `v`.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_arcs[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_degree[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_degree[v]
    }

    pub fn out_degrees(&self) -> &[usize] {
        &self.out_degree
    }

    /// Serializes as 0-based `u v weight` lines.
    pub fn to_snap(&self) -> String {
        let mut out = String::new();
        for a in &self.arcs {
            let _ = writeln!(out, "{} {} {}", a.from, a.to, a.weight);
        }
        out
    }
}

fn check_arc(
    line: usize,
    n: usize,
    u: usize,
    v: usize,
    seen: &mut HashSet<(usize, usize)>,
) -> Result<(), ParseError> {
    for id in [u, v] {
        if id >= n {
            return Err(ParseError::NodeOutOfRange { line, id: id as i64, n });
        }
    }
    if u == v {
        return Err(ParseError::SelfLoop { line, node: u });
    }
    if !seen.insert((u, v)) {
        return Err(ParseError::DuplicateEdge { line, u, v });
    }
    Ok(())
}

/// Parses a SNAP-style arc list: `u v [weight]` per line, no header.
///
/// The node count is one more than the largest 0-based id. A missing
/// weight defaults to 1.0. Probabilities are `weight / indegree(v)`,
/// clamped to 1 with a warning.
pub fn parse_snap_weighted(text: &str, indexing: Indexing) -> Result<(DirectedGraph, Vec<ParseWarning>), ParseError> {
    let offset = match indexing {
        Indexing::ZeroBased => 0,
        Indexing::OneBased => 1,
    };
    let mut raw = Vec::new();
    let mut max_id = None::<usize>;
    for (line, tokens) in data_lines(text) {
        let weight = match tokens.len() {
            2 => 1.0,
            3 => parse_f64(tokens[2], line, "arc weight")?,
            _ => return Err(ParseError::Malformed { line, reason: "expected `u v [weight]`".into() }),
        };
        let mut ids = [0usize; 2];
        for (slot, tok) in ids.iter_mut().zip(&tokens[..2]) {
            let id = parse_i64(tok, line, "node id")?;
            if id < offset {
                return Err(ParseError::NodeOutOfRange { line, id, n: max_id.map_or(0, |m| m + 1) });
            }
            *slot = (id - offset) as usize;
        }
        max_id = Some(max_id.unwrap_or(0).max(ids[0]).max(ids[1]));
        raw.push((line, ids[0], ids[1], weight));
    }
    let node_count = max_id.map_or(0, |m| m + 1);
    if node_count == 0 {
        return Err(ParseError::MissingSection("arcs".into()));
    }
    DirectedGraph::build(node_count, raw)
}
