//! Fixed-length binary search points.

use std::fmt;

use rand::Rng;

/// A search point `x ∈ {0,1}^n` with a cached count of set bits.
///
/// Bit `i` set means element `i` of the ground set is selected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
    ones: usize,
}

impl BitString {
    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![false; n], ones: 0 }
    }

    pub fn ones_vec(n: usize) -> Self {
        Self { bits: vec![true; n], ones: n }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        let ones = bits.iter().filter(|&&b| b).count();
        Self { bits, ones }
    }

    /// Low `n` bits of `mask`, bit `i` of the mask mapping to position `i`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        assert!(n <= 64, "mask conversion supports at most 64 positions");
        Self::from_bits((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::from_bits((0..n).map(|_| rng.random::<bool>()).collect())
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Option<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::from_bits)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `|x|_1`
    #[inline]
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.bits[i] != value {
            self.bits[i] = value;
            if value {
                self.ones += 1;
            } else {
                self.ones -= 1;
            }
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        let value = !self.bits[i];
        self.set(i, value);
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| !b).collect(),
            ones: self.len() - self.ones,
        }
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    /// Indices of the selected elements, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn hamming_distance(&self, other: &Self) -> usize {
        self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count()
    }

    /// Bitmask of the first 64 positions.
    pub fn to_mask(&self) -> u64 {
        self.iter_ones().filter(|&i| i < 64).fold(0, |m, i| m | 1 << i)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_count_tracks_mutation() {
        let mut x = BitString::zeros(5);
        x.flip(1);
        x.flip(3);
        x.set(3, true);
        assert_eq!(x.count_ones(), 2);
        x.flip(1);
        assert_eq!(x.count_ones(), 1);
        assert_eq!(x.to_string(), "00010");
        assert_eq!(x.complement().count_ones(), 4);
    }

    #[test]
    fn mask_round_trip() {
        let x = BitString::from_mask(0b1011, 6);
        assert_eq!(x.to_string(), "110100");
        assert_eq!(x.to_mask(), 0b1011);
        assert_eq!(BitString::parse("110100"), Some(x));
        assert_eq!(BitString::parse("12"), None);
    }
}
