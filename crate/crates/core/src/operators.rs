//! Variation primitives: flip-count samplers, distinct-bit mutation and
//! biased uniform crossover.
//!
//! Flip-count samplers never return 0, so every mutation changes the point.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution, Normal};
use thiserror::Error;

use crate::BitString;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("cannot flip {flips} distinct bits of a length-{len} string")]
    TooManyFlips { flips: usize, len: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// Draws `ℓ ~ Bin(n, p)` conditioned on `ℓ >= 1`.
///
/// Sampled by inverting the renormalized CDF. When `P(ℓ = 1)` underflows
/// (`n·p` in the hundreds) the mass at 0 is negligible and an
/// unconditioned binomial draw is rejected while zero instead.
pub fn sample_binomial_gt0<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> usize {
    assert!(n >= 1, "binomial needs n >= 1");
    assert!(p > 0.0 && p <= 1.0, "binomial probability {p} outside (0, 1]");
    if n == 1 || p >= 1.0 {
        return n;
    }
    let q = 1.0 - p;
    let ln_pmf1 = (n as f64).ln() + p.ln() + (n - 1) as f64 * q.ln();
    if ln_pmf1 < -600.0 {
        let binomial = Binomial::new(n as u64, p).expect("valid binomial parameters");
        loop {
            let k = binomial.sample(rng) as usize;
            if k > 0 {
                return k;
            }
        }
    }
    // P(ℓ >= 1) = 1 - q^n
    let mass = -((n as f64) * (-p).ln_1p()).exp_m1();
    let target = rng.random::<f64>() * mass;
    let ratio = p / q;
    let mut pmf = ln_pmf1.exp();
    let mut cdf = pmf;
    let mut k = 1;
    while cdf <= target && k < n {
        pmf *= (n - k) as f64 / (k + 1) as f64 * ratio;
        k += 1;
        cdf += pmf;
    }
    k
}

/// Power-law flip counts: `P(ℓ = k) ∝ k^-β` on `1..=max(1, ⌊n/2⌋)`.
#[derive(Clone, Debug)]
pub struct PowerLaw {
    cdf: Vec<f64>,
}

impl PowerLaw {
    pub fn new(n: usize, beta: f64) -> Self {
        let upper = (n / 2).max(1);
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = (1..=upper)
            .map(|k| {
                acc += (k as f64).powf(-beta);
                acc
            })
            .collect();
        for c in &mut cdf {
            *c /= acc;
        }
        Self { cdf }
    }

    pub fn upper(&self) -> usize {
        self.cdf.len()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u = rng.random::<f64>();
        let idx = self.cdf.partition_point(|&c| c <= u);
        idx.min(self.cdf.len() - 1) + 1
    }
}

/// One draw from [`PowerLaw`]; build the table once when sampling repeatedly.
pub fn sample_power_law<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> usize {
    PowerLaw::new(n, beta).sample(rng)
}

/// Normalized bit mutation: `ℓ ~ N(r, factor · r(1 - r/n))`, rounded and
/// resampled until it lies in `[1, n]`.
///
/// `variance_factor` scales the variance (1 for the plain operator).
pub fn sample_normal_flip_count<R: Rng + ?Sized>(r: f64, n: usize, variance_factor: f64, rng: &mut R) -> usize {
    assert!(n >= 1);
    let r = r.clamp(1.0, n as f64);
    let variance = variance_factor * r * (1.0 - r / n as f64);
    let sd = variance.max(0.0).sqrt();
    if sd == 0.0 || !sd.is_finite() {
        return (r.round() as usize).clamp(1, n);
    }
    let normal = Normal::new(r, sd).expect("finite positive standard deviation");
    loop {
        let v = normal.sample(rng).round();
        if v >= 1.0 && v <= n as f64 {
            return v as usize;
        }
    }
}

/// Flips `flips` distinct positions chosen uniformly at random, in place.
pub(crate) fn flip_in_place<R: Rng + ?Sized>(x: &mut BitString, flips: usize, rng: &mut R) {
    debug_assert!(flips <= x.len());
    if flips == 1 {
        let i = rng.random_range(0..x.len());
        x.flip(i);
        return;
    }
    for i in index::sample(rng, x.len(), flips) {
        x.flip(i);
    }
}

/// Copy of `x` with exactly `flips` distinct positions inverted.
pub fn flip_distinct_bits<R: Rng + ?Sized>(x: &BitString, flips: usize, rng: &mut R) -> Result<BitString, OperatorError> {
    if flips > x.len() {
        return Err(OperatorError::TooManyFlips { flips, len: x.len() });
    }
    let mut y = x.clone();
    flip_in_place(&mut y, flips, rng);
    Ok(y)
}

/// Takes each bit from `mutant` with probability `bias`, else from `parent`.
pub fn biased_uniform_crossover<R: Rng + ?Sized>(
    parent: &BitString,
    mutant: &BitString,
    bias: f64,
    rng: &mut R,
) -> Result<BitString, OperatorError> {
    if parent.len() != mutant.len() {
        return Err(OperatorError::LengthMismatch { left: parent.len(), right: mutant.len() });
    }
    let mut child = parent.clone();
    // positions where the parents agree are unaffected by the draw
    for i in 0..parent.len() {
        if parent.get(i) != mutant.get(i) && rng.random_bool(bias.clamp(0.0, 1.0)) {
            child.set(i, mutant.get(i));
        }
    }
    Ok(child)
}
