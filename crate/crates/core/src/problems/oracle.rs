//! Exhaustive property checks of set functions over small ground sets.
//!
//! A set function is given as a table indexed by subset bitmask.

use super::{exact_influence_table, Problem, ProblemError, ProblemKind, MAX_BRUTE_FORCE_DIM};
use crate::BitString;

/// A witness `S ⊆ T`, `v ∉ T` with `f(S+v) - f(S) < f(T+v) - f(T) - tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmodularityViolation {
    pub smaller: u64,
    pub larger: u64,
    pub element: usize,
    pub gain_smaller: f64,
    pub gain_larger: f64,
}

/// A witness `A ⊆ B` with `f(A) > f(B) + tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityViolation {
    pub subset: u64,
    pub superset: u64,
}

/// Unconstrained, noise-free objective of every subset of the ground set.
pub fn objective_table(problem: &Problem) -> Result<Vec<f64>, ProblemError> {
    let n = problem.dimension();
    if n > MAX_BRUTE_FORCE_DIM {
        return Err(ProblemError::TooLarge { what: "dimension", size: n, limit: MAX_BRUTE_FORCE_DIM });
    }
    if let Some(graph) = problem.influence_graph() {
        return exact_influence_table(graph);
    }
    if problem.kind() == ProblemKind::Pwt {
        return Err(ProblemError::Unsupported("packing while traveling has no unconstrained objective"));
    }
    (0..1u64 << n)
        .map(|mask| {
            let value = problem.raw_objective(&BitString::from_mask(mask, n))?;
            Ok(value.expect("graph objectives are total"))
        })
        .collect()
}

fn dimension_of(table: &[f64]) -> usize {
    assert!(table.len().is_power_of_two(), "table length must be 2^n");
    table.len().trailing_zeros() as usize
}

/// Checks the diminishing-returns inequality for every `S ⊆ T` and `v ∉ T`.
///
/// Runs in `O(3^n · n)`.
pub fn check_submodular_exhaustive(table: &[f64], tol: f64) -> Option<SubmodularityViolation> {
    let n = dimension_of(table);
    let full = (1u64 << n) - 1;
    for t in 0..=full {
        // all submasks of t, including t and 0
        let mut s = t;
        loop {
            for v in (0..n).filter(|v| t >> v & 1 == 0) {
                let gain_s = table[(s | 1 << v) as usize] - table[s as usize];
                let gain_t = table[(t | 1 << v) as usize] - table[t as usize];
                if gain_s < gain_t - tol {
                    return Some(SubmodularityViolation {
                        smaller: s,
                        larger: t,
                        element: v,
                        gain_smaller: gain_s,
                        gain_larger: gain_t,
                    });
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
    }
    None
}

/// Equivalent local test: `f(S+i) + f(S+j) >= f(S+i+j) + f(S)` for all `S`
/// and distinct `i, j ∉ S`. Runs in `O(2^n · n^2)`.
///
/// The violation reports `S` as `smaller`, `S+i` as `larger` and `j` as
/// the element.
pub fn check_submodular_pairwise(table: &[f64], tol: f64) -> Option<SubmodularityViolation> {
    let n = dimension_of(table);
    for s in 0..table.len() as u64 {
        for i in (0..n).filter(|i| s >> i & 1 == 0) {
            for j in (i + 1..n).filter(|j| s >> j & 1 == 0) {
                let si = s | 1 << i;
                let gain_s = table[(s | 1 << j) as usize] - table[s as usize];
                let gain_t = table[(si | 1 << j) as usize] - table[si as usize];
                if gain_s < gain_t - tol {
                    return Some(SubmodularityViolation {
                        smaller: s,
                        larger: si,
                        element: j,
                        gain_smaller: gain_s,
                        gain_larger: gain_t,
                    });
                }
            }
        }
    }
    None
}

/// Checks `f(S) <= f(S + v)` for all `S` and `v`, which implies
/// `f(A) <= f(B)` for all `A ⊆ B`.
pub fn check_monotone(table: &[f64], tol: f64) -> Option<MonotonicityViolation> {
    let n = dimension_of(table);
    for s in 0..table.len() as u64 {
        for v in (0..n).filter(|v| s >> v & 1 == 0) {
            let t = s | 1 << v;
            if table[s as usize] > table[t as usize] + tol {
                return Some(MonotonicityViolation { subset: s, superset: t });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_function_passes() {
        let w = [1.0, -2.0, 3.5];
        let table: Vec<f64> =
            (0..8u64).map(|m| (0..3).filter(|i| m >> i & 1 == 1).map(|i| w[i]).sum()).collect();
        assert_eq!(check_submodular_exhaustive(&table, 1e-9), None);
        assert_eq!(check_submodular_pairwise(&table, 1e-9), None);
        assert!(check_monotone(&table, 1e-9).is_some());
    }

    #[test]
    fn supermodular_function_is_caught() {
        // f(S) = |S|^2 has increasing marginal gains
        let table: Vec<f64> = (0..16u64).map(|m| (m.count_ones() as f64).powi(2)).collect();
        let v = check_submodular_exhaustive(&table, 1e-9).unwrap();
        assert!(v.gain_smaller < v.gain_larger);
        assert!(check_submodular_pairwise(&table, 1e-9).is_some());
        assert_eq!(check_monotone(&table, 1e-9), None);
    }
}
