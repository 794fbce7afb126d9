//! Subsets of the state space encoded as bit patterns.

use crate::error::{Error, Result};

/// Largest state count that fits in a mask.
pub const MAX_MASK_STATES: usize = 64;

/// Default cap for exhaustive subset enumeration.
pub const ENUMERATION_CAP: usize = 20;

/// A subset `A` of `{0, .., n-1}` together with its stationary measure.
///
/// The measure is always the sum of `pi` over the set bits, taken in index
/// order, so a set and its complement see consistent values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsetMask {
    bits: u64,
    n: usize,
    measure: f64,
}

impl SubsetMask {
    pub fn from_bits(bits: u64, pi: &[f64]) -> Result<Self> {
        let n = pi.len();
        if n > MAX_MASK_STATES {
            return Err(Error::InvalidParameter(format!(
                "subset masks support at most {MAX_MASK_STATES} states, chain has {n}"
            )));
        }
        if n < 64 && bits >> n != 0 {
            return Err(Error::InvalidParameter(format!(
                "mask {bits:#x} has bits outside {n} states"
            )));
        }
        Ok(Self {
            bits,
            n,
            measure: mask_measure(bits, pi),
        })
    }

    pub fn from_states(states: &[usize], pi: &[f64]) -> Result<Self> {
        let mut bits = 0u64;
        for &s in states {
            if s >= pi.len() || s >= MAX_MASK_STATES {
                return Err(Error::InvalidParameter(format!("state {s} out of range")));
            }
            bits |= 1 << s;
        }
        Self::from_bits(bits, pi)
    }

    pub fn empty(pi: &[f64]) -> Result<Self> {
        Self::from_bits(0, pi)
    }

    pub fn full(pi: &[f64]) -> Result<Self> {
        Self::from_bits(full_bits(pi.len()), pi)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `pi(A)`.
    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits >> v & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_bits(self.n)
    }

    /// Nonempty and not the whole space.
    pub fn is_proper(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    pub fn complement(&self, pi: &[f64]) -> Self {
        let bits = !self.bits & full_bits(self.n);
        Self {
            bits,
            n: self.n,
            measure: mask_measure(bits, pi),
        }
    }

    pub fn states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }
}

impl std::fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.states().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub fn full_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_measure(bits: u64, pi: &[f64]) -> f64 {
    let mut total = 0.0;
    let mut rest = bits;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        total += pi[v];
        rest &= rest - 1;
    }
    total
}

/// Errors unless exhaustive enumeration over `n` states is within `cap`.
pub fn check_enumeration_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n >= MAX_MASK_STATES {
        return Err(Error::EnumerationCap { n, cap });
    }
    Ok(())
}

/// All nonempty proper subsets of `n` states, as bit patterns.
pub fn proper_masks(n: usize) -> impl Iterator<Item = u64> {
    1..full_bits(n)
}
