//! Independent cascade propagation and its exact expectation for tiny graphs.

use rand::Rng;

use super::ProblemError;
use crate::instance::DirectedGraph;

/// Largest arc count for which live-arc enumeration is attempted.
pub const MAX_EXACT_ARCS: usize = 20;

/// One random independent-cascade propagation from `seeds`; returns the
/// number of active nodes when the process stops.
///
/// Every seed is active at time 0 and each arc gets at most one activation
/// attempt, made when its tail first becomes active.
pub fn simulate_ic<R, I>(graph: &DirectedGraph, seeds: I, rng: &mut R) -> usize
where
    R: Rng + ?Sized,
    I: IntoIterator<Item = usize>,
{
    let mut active = vec![false; graph.node_count()];
    let mut frontier = Vec::new();
    simulate_into(graph, seeds, rng, &mut active, &mut frontier)
}

/// [`simulate_ic`] with caller-provided scratch buffers. `active` must be
/// all `false` on entry and is reset before returning.
pub(crate) fn simulate_into<R, I>(
    graph: &DirectedGraph,
    seeds: I,
    rng: &mut R,
    active: &mut [bool],
    activated: &mut Vec<usize>,
) -> usize
where
    R: Rng + ?Sized,
    I: IntoIterator<Item = usize>,
{
    activated.clear();
    for s in seeds {
        if !active[s] {
            active[s] = true;
            activated.push(s);
        }
    }
    // `activated` doubles as BFS queue: everything before `head` has had its
    // out-arcs tried.
    let mut head = 0;
    while head < activated.len() {
        let u = activated[head];
        head += 1;
        for &a in graph.out_arcs(u) {
            let arc = graph.arcs()[a];
            if !active[arc.to] && rng.random::<f64>() < arc.prob {
                active[arc.to] = true;
                activated.push(arc.to);
            }
        }
    }
    let count = activated.len();
    for &v in activated.iter() {
        active[v] = false;
    }
    count
}

/// Nodes reachable from each node over the arcs selected by `live`.
fn reach_masks(graph: &DirectedGraph, live: u64) -> Vec<u64> {
    let n = graph.node_count();
    let mut succ = vec![0u64; n];
    for (i, a) in graph.arcs().iter().enumerate() {
        if live >> i & 1 == 1 {
            succ[a.from] |= 1 << a.to;
        }
    }
    (0..n)
        .map(|v| {
            let mut reach = 1u64 << v;
            let mut todo = reach;
            while todo != 0 {
                let u = todo.trailing_zeros() as usize;
                todo &= todo - 1;
                let new = succ[u] & !reach;
                reach |= new;
                todo |= new;
            }
            reach
        })
        .collect()
}

fn world_probability(graph: &DirectedGraph, live: u64) -> f64 {
    graph
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, a)| if live >> i & 1 == 1 { a.prob } else { 1.0 - a.prob })
        .product()
}

/// Exact `E[|IC(seeds)|]` by enumerating all live-arc subsets.
pub fn exact_influence_expectation(graph: &DirectedGraph, seeds: &[usize]) -> Result<f64, ProblemError> {
    if graph.arc_count() > MAX_EXACT_ARCS {
        return Err(ProblemError::TooLarge { what: "arcs", size: graph.arc_count(), limit: MAX_EXACT_ARCS });
    }
    if graph.node_count() > 64 {
        return Err(ProblemError::TooLarge { what: "nodes", size: graph.node_count(), limit: 64 });
    }
    if seeds.is_empty() {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for live in 0..1u64 << graph.arc_count() {
        let p = world_probability(graph, live);
        if p == 0.0 {
            continue;
        }
        let reach = reach_masks(graph, live);
        let covered = seeds.iter().fold(0u64, |m, &s| m | reach[s]);
        total += p * covered.count_ones() as f64;
    }
    Ok(total)
}

/// Exact expectation for every seed set at once, indexed by seed bitmask.
///
/// Cost is `2^(arcs + nodes)`; both exponents are bounded.
pub fn exact_influence_table(graph: &DirectedGraph) -> Result<Vec<f64>, ProblemError> {
    let (n, m) = (graph.node_count(), graph.arc_count());
    if m > MAX_EXACT_ARCS {
        return Err(ProblemError::TooLarge { what: "arcs", size: m, limit: MAX_EXACT_ARCS });
    }
    if n > super::MAX_BRUTE_FORCE_DIM {
        return Err(ProblemError::TooLarge { what: "nodes", size: n, limit: super::MAX_BRUTE_FORCE_DIM });
    }
    if n + m > 34 {
        return Err(ProblemError::TooLarge { what: "nodes + arcs", size: n + m, limit: 34 });
    }
    let mut table = vec![0.0; 1 << n];
    let mut union = vec![0u64; 1 << n];
    for live in 0..1u64 << m {
        let p = world_probability(graph, live);
        if p == 0.0 {
            continue;
        }
        let reach = reach_masks(graph, live);
        for s in 1..union.len() {
            let low = s.trailing_zeros() as usize;
            union[s] = union[s & (s - 1)] | reach[low];
            table[s] += p * union[s].count_ones() as f64;
        }
    }
    Ok(table)
}
