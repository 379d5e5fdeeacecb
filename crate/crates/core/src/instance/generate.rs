//! Synthetic instance generators for tests, fixtures and smoke experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{DirectedGraph, Item, TtpInstance, UndirectedGraph};

/// Erdős–Rényi `G(n, p)` graph; each present edge gets `weight(rng)`.
pub fn random_graph<R, W>(n: usize, edge_prob: f64, mut weight: W, rng: &mut R) -> UndirectedGraph
where
    R: Rng + ?Sized,
    W: FnMut(&mut R) -> f64,
{
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(edge_prob) {
                edges.push((u, v, weight(rng)));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).expect("generated edges are valid")
}

/// Digraph with `arcs` distinct arcs drawn uniformly among all ordered
/// pairs, each with a probability drawn uniformly from `[0, 1)`.
pub fn random_digraph<R: Rng + ?Sized>(n: usize, arcs: usize, rng: &mut R) -> DirectedGraph {
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    pairs.truncate(arcs);
    pairs.sort_unstable();
    DirectedGraph::from_probabilities(n, pairs.into_iter().map(|(u, v)| (u, v, rng.random::<f64>())))
        .expect("generated arcs are valid")
}

/// PWT instance with `items` items spread uniformly over `cities` cities.
///
/// Distances are integers in `1..=10`, profits and weights in `1..=20`,
/// capacity about a third of the total weight (at least 1), speeds
/// `[0.1, 1]` and a rent in `[0, 1)`.
pub fn random_ttp<R: Rng + ?Sized>(cities: usize, items: usize, rng: &mut R) -> TtpInstance {
    let distances = (0..cities).map(|_| rng.random_range(1..=10) as f64).collect();
    let items: Vec<Item> = (0..items)
        .map(|_| Item {
            city: rng.random_range(0..cities),
            profit: rng.random_range(1..=20),
            weight: rng.random_range(1..=20),
        })
        .collect();
    let total: u64 = items.iter().map(|i| i.weight).sum();
    let capacity = (total / 3).max(1) as f64;
    let rent = rng.random::<f64>();
    TtpInstance::new(distances, items, 0.1, 1.0, capacity, rent).expect("generated instance is valid")
}
