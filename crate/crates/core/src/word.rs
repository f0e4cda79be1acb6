//! Cyclic binary words read along strands.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pattern::Colour;

/// A cyclic word over {0, 1}; bit 1 stands for a pale cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrandWord {
    bits: Vec<bool>,
}

impl StrandWord {
    pub fn new(bits: Vec<bool>) -> Self {
        assert!(!bits.is_empty(), "strand words are non-empty");
        StrandWord { bits }
    }

    pub fn from_colours(colours: &[Colour]) -> Self {
        StrandWord::new(colours.iter().map(|c| c.bit()).collect())
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.filter(|b| !b.is_empty()).map(StrandWord::new)
    }

    /// The word of `len` bits whose binary value (first bit most significant) is `value`.
    pub fn from_value(value: u64, len: usize) -> Self {
        assert!(len > 0 && len <= 64);
        StrandWord::new((0..len).rev().map(|k| (value >> k) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Smallest cyclic period.
    pub fn period(&self) -> usize {
        let n = self.bits.len();
        (1..=n)
            .find(|&d| n.is_multiple_of(d) && (0..n).all(|k| self.bits[k] == self.bits[(k + d) % n]))
            .unwrap_or(n)
    }

    pub fn primitive(&self) -> StrandWord {
        let p = self.period();
        StrandWord::new(self.bits[..p].to_vec())
    }

    /// Rotation starting at position `k`.
    pub fn rotated(&self, k: usize) -> StrandWord {
        let n = self.bits.len();
        StrandWord::new((0..n).map(|i| self.bits[(i + k) % n]).collect())
    }

    pub fn reversed(&self) -> StrandWord {
        StrandWord::new(self.bits.iter().rev().copied().collect())
    }

    pub fn complemented(&self) -> StrandWord {
        StrandWord::new(self.bits.iter().map(|b| !b).collect())
    }

    /// Binary value with the first bit most significant. `None` past 64 bits.
    pub fn value(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    /// Every rotation of the word, its reversal and their complements.
    pub fn variants(&self) -> Vec<StrandWord> {
        let mut out = Vec::with_capacity(4 * self.len());
        for base in [self.clone(), self.reversed()] {
            for w in [base.complemented(), base] {
                for k in 0..w.len() {
                    out.push(w.rotated(k));
                }
            }
        }
        out
    }

    /// Lexicographically least variant (rotation, reversal, complement).
    /// For equal lengths this is also the variant of least binary value.
    pub fn canonical(&self) -> StrandWord {
        self.variants().into_iter().min().expect("non-empty")
    }

    /// Minimal binary value over all variants.
    pub fn binary_index(&self) -> Option<u64> {
        self.canonical().value()
    }

    /// Equal to its reversal up to rotation.
    pub fn is_cyclic_palindrome(&self) -> bool {
        let r = self.reversed();
        (0..self.len()).any(|k| self.rotated(k) == r)
    }

    /// Equal as cyclic words up to rotation, reversal and complement.
    pub fn equivalent(&self, other: &StrandWord) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl fmt::Display for StrandWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
