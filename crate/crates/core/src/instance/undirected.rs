use std::collections::HashSet;
use std::fmt::Write as _;

use super::text::{data_lines, parse_f64, parse_i64, parse_usize};
use super::ParseError;

/// An undirected edge between 0-based nodes `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Undirected weighted graph with 0-based nodes.
///
/// Edges are stored with `u < v`; self-loops and parallel edges are rejected
/// on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct UndirectedGraph {
    node_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl UndirectedGraph {
    /// Builds a graph from 0-based `(u, v, weight)` triples.
    ///
    /// Negative weights are accepted; the edge-list parser filters them
    /// before calling this, the G-Set parser does not.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut builder = Builder::new(node_count);
        for (u, v, w) in edges {
            builder.push(0, u as i64 + 1, v as i64 + 1, w)?;
        }
        Ok(builder.finish())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with the connecting edge weight.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Serializes as a 1-based `n m` / `u v w` edge list.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.node_count, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.weight);
        }
        out
    }

    /// Edges as `(u, v, weight)` sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(usize, usize, f64)> {
        let mut edges: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, e.weight)).collect();
        edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(a.2.total_cmp(&b.2)));
        edges
    }
}

struct Builder {
    node_count: usize,
    edges: Vec<Edge>,
    seen: HashSet<(usize, usize)>,
}

impl Builder {
    fn new(node_count: usize) -> Self {
        Self { node_count, edges: Vec::new(), seen: HashSet::new() }
    }

    /// Adds an edge given 1-based ids.
    fn push(&mut self, line: usize, a: i64, b: i64, weight: f64) -> Result<(), ParseError> {
        let n = self.node_count;
        for id in [a, b] {
            if id < 1 || id as u64 > n as u64 {
                return Err(ParseError::NodeOutOfRange { line, id, n });
            }
        }
        if !weight.is_finite() {
            return Err(ParseError::InvalidWeight { line, weight });
        }
        let (a, b) = (a as usize - 1, b as usize - 1);
        if a == b {
            return Err(ParseError::SelfLoop { line, node: a + 1 });
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        if !self.seen.insert((u, v)) {
            return Err(ParseError::DuplicateEdge { line, u: u + 1, v: v + 1 });
        }
        self.edges.push(Edge { u, v, weight });
        Ok(())
    }

    fn finish(self) -> UndirectedGraph {
        let mut adjacency = vec![Vec::new(); self.node_count];
        for e in &self.edges {
            adjacency[e.u].push((e.v, e.weight));
            adjacency[e.v].push((e.u, e.weight));
        }
        UndirectedGraph { node_count: self.node_count, edges: self.edges, adjacency }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Dialect {
    Plain,
    Dimacs,
}

fn parse_undirected(text: &str, weight_required: bool, allow_negative: bool) -> Result<UndirectedGraph, ParseError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;

    // DIMACS graphs (frb benchmarks) use `p edge n m` with `e u v` lines.
    let (dialect, counts) = if header[0] == "p" {
        (Dialect::Dimacs, &header[header.len().min(2)..])
    } else {
        (Dialect::Plain, &header[..])
    };
    if counts.len() < 2 {
        return Err(ParseError::Malformed {
            line: header_line,
            reason: "header must declare node and edge counts".into(),
        });
    }
    let n = parse_usize(counts[0], header_line, "node count")?;
    let m = parse_usize(counts[1], header_line, "edge count")?;
    if n == 0 {
        return Err(ParseError::Malformed { line: header_line, reason: "node count must be positive".into() });
    }

    let mut builder = Builder::new(n);
    for (line, mut tokens) in lines {
        if dialect == Dialect::Dimacs {
            match tokens.first() {
                Some(&"e") => {
                    tokens.remove(0);
                }
                Some(&"c") => continue,
                _ => {
                    return Err(ParseError::Malformed { line, reason: "expected `e u v` line".into() });
                }
            }
        }
        let weight = match (tokens.len(), weight_required) {
            (2, false) => 1.0,
            (3, _) => parse_f64(tokens[2], line, "edge weight")?,
            _ => {
                let expect = if weight_required { "`u v w`" } else { "`u v [w]`" };
                return Err(ParseError::Malformed { line, reason: format!("expected {expect}") });
            }
        };
        if weight < 0.0 && !allow_negative {
            return Err(ParseError::InvalidWeight { line, weight });
        }
        let u = parse_i64(tokens[0], line, "node id")?;
        let v = parse_i64(tokens[1], line, "node id")?;
        builder.push(line, u, v, weight)?;
    }
    if builder.edges.len() != m {
        return Err(ParseError::CountMismatch { declared: m, found: builder.edges.len() });
    }
    Ok(builder.finish())
}

/// Parses a 1-indexed edge list: header `n m`, then `u v [w]` lines.
///
/// With `weighted` set every edge line must carry a weight; otherwise a
/// missing weight defaults to 1.0. DIMACS `p edge n m` / `e u v` files are
/// accepted as well. Negative weights are rejected.
pub fn parse_edge_list(text: &str, weighted: bool) -> Result<UndirectedGraph, ParseError> {
    parse_undirected(text, weighted, false)
}

/// Parses a G-Set file: header `n m`, then `u v w` lines. Weights (which may
/// be negative in G-Set) are kept as written.
pub fn parse_gset(text: &str) -> Result<UndirectedGraph, ParseError> {
    parse_undirected(text, true, true)
}
