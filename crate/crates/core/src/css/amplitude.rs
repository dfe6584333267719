//! Exact amplitudes in `Z[ω]`, `ω = e^{iπ/2^level}`.
//!
//! The powers `1, ω, …, ω^{2^level − 1}` are linearly independent over Q
//! (the minimal polynomial of ω is `x^{2^level} + 1`), so storing integer
//! coefficients on exactly those powers gives a canonical form and equality
//! is structural.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Deepest supported root of unity, `e^{iπ/2^MAX_LEVEL}`.
pub const MAX_LEVEL: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    level: u32,
    /// `(power, coefficient)`, powers in `[0, 2^level)`, strictly increasing,
    /// coefficients nonzero.
    terms: Vec<(u32, i64)>,
}

impl Cyclotomic {
    #[must_use]
    pub fn zero(level: u32) -> Self {
        assert!(level <= MAX_LEVEL);
        Self {
            level,
            terms: Vec::new(),
        }
    }

    /// `ω^exponent`; the exponent is taken modulo `2^{level+1}`.
    #[must_use]
    pub fn root(level: u32, exponent: u64) -> Self {
        let mut z = Self::zero(level);
        z.add_root(exponent, 1);
        z
    }

    #[must_use]
    pub fn level(&self) -> u32 {
        self.level
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn half(&self) -> u64 {
        1u64 << self.level
    }

    /// `self += coeff · ω^exponent`.
    pub fn add_root(&mut self, exponent: u64, coeff: i64) {
        let half = self.half();
        let e = exponent % (2 * half);
        let (power, coeff) = if e < half {
            (e as u32, coeff)
        } else {
            ((e - half) as u32, -coeff)
        };
        match self.terms.binary_search_by_key(&power, |t| t.0) {
            Ok(i) => {
                self.terms[i].1 += coeff;
                if self.terms[i].1 == 0 {
                    self.terms.remove(i);
                }
            }
            Err(i) => {
                if coeff != 0 {
                    self.terms.insert(i, (power, coeff));
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        let other = other.lifted(self.level.max(other.level));
        if other.level > self.level {
            *self = self.lifted(other.level);
        }
        for &(p, c) in &other.terms {
            self.add_root(u64::from(p), c);
        }
    }

    /// Multiply by `ω^exponent`.
    #[must_use]
    pub fn mul_root(&self, exponent: u64) -> Self {
        let mut out = Self::zero(self.level);
        for &(p, c) in &self.terms {
            out.add_root(u64::from(p) + exponent, c);
        }
        out
    }

    /// Same number written over `ω' = e^{iπ/2^level}` with `level ≥ self.level`.
    #[must_use]
    pub fn lifted(&self, level: u32) -> Self {
        assert!(level >= self.level && level <= MAX_LEVEL);
        let shift = level - self.level;
        Self {
            level,
            terms: self.terms.iter().map(|&(p, c)| (p << shift, c)).collect(),
        }
    }

    /// `self / 2` when every coefficient is even.
    #[must_use]
    pub fn halved(&self) -> Option<Self> {
        self.terms.iter().all(|t| t.1 % 2 == 0).then(|| Self {
            level: self.level,
            terms: self.terms.iter().map(|&(p, c)| (p, c / 2)).collect(),
        })
    }

    /// `Some(e)` when `self = ω^e` exactly, `e ∈ [0, 2^{level+1})`.
    #[must_use]
    pub fn as_root(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [(p, 1)] => Some(u64::from(*p)),
            [(p, -1)] => Some(u64::from(*p) + self.half()),
            _ => None,
        }
    }

    #[must_use]
    pub fn to_complex(&self) -> Complex64 {
        let step = PI / self.half() as f64;
        self.terms
            .iter()
            .map(|&(p, c)| Complex64::from_polar(c as f64, step * f64::from(p)))
            .sum()
    }

    /// The `e ∈ [0, 2^{level+1})` with `self = ω^e · other`, if one exists.
    #[must_use]
    pub fn ratio_root(&self, other: &Self) -> Option<u64> {
        let level = self.level.max(other.level);
        let a = self.lifted(level);
        let b = other.lifted(level);
        if a.terms.len() != b.terms.len() {
            return None;
        }
        if a.is_zero() {
            return Some(0);
        }
        let period = 2u64 << level;
        let (pa, _) = a.terms[0];
        // ω^e·b must place some term of b on pa; that fixes e up to one candidate per term.
        b.terms
            .iter()
            .flat_map(|&(pb, _)| {
                let base = (u64::from(pa) + period - u64::from(pb)) % period;
                [base, (base + (1 << level)) % period]
            })
            .find(|&e| b.mul_root(e) == a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_wrap_with_sign() {
        let z = Cyclotomic::root(2, 5);
        assert_eq!(z, {
            let mut w = Cyclotomic::zero(2);
            w.add_root(1, -1);
            w
        });
        assert_eq!(z.as_root(), Some(5));
        assert_eq!(Cyclotomic::root(2, 8), Cyclotomic::root(2, 0));
    }

    #[test]
    fn lifting_preserves_value() {
        let z = Cyclotomic::root(1, 3);
        let w = z.lifted(3);
        assert_eq!(w.as_root(), Some(12));
        assert!((z.to_complex() - w.to_complex()).norm() < 1e-12);
    }

    #[test]
    fn cancellation_gives_zero() {
        let mut z = Cyclotomic::root(0, 0);
        z.add_assign(&Cyclotomic::root(0, 1));
        assert!(z.is_zero());
    }

    #[test]
    fn ratio_of_roots() {
        let a = Cyclotomic::root(3, 11);
        let b = Cyclotomic::root(2, 1);
        assert_eq!(a.ratio_root(&b), Some(9));
        let mut sum = Cyclotomic::root(2, 0);
        sum.add_root(1, 2);
        assert_eq!(sum.mul_root(3).ratio_root(&sum), Some(3));
        assert_eq!(sum.ratio_root(&Cyclotomic::root(2, 0)), None);
    }
}
