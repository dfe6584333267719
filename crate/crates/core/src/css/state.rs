use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::amplitude::{Cyclotomic, MAX_LEVEL};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Largest number of terms a sparse state may hold.
pub const SPARSE_TERM_CAP: usize = 1 << 22;

/// Sparse state `(1/√scale) Σ_v c_v |v⟩` with exact coefficients `c_v ∈ Z[ω]`,
/// `ω = e^{iπ/2^level}`. Terms are kept in lexicographic ket order.
#[derive(Clone, Debug)]
pub struct SparseState {
    n: usize,
    level: u32,
    scale: u64,
    terms: BTreeMap<BitVector, Cyclotomic>,
}

/// Exact or approximate unit-modulus factor between two states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalPhase {
    /// `e^{iπ·exponent/2^level}`.
    Exact { level: u32, exponent: u64 },
    Approx { re: f64, im: f64 },
}

impl GlobalPhase {
    #[must_use]
    pub fn to_complex(self) -> Complex64 {
        match self {
            GlobalPhase::Exact { level, exponent } => {
                Complex64::from_polar(1.0, std::f64::consts::PI * exponent as f64 / f64::from(1u32 << level))
            }
            GlobalPhase::Approx { re, im } => Complex64::new(re, im),
        }
    }

    /// Exponent in units of `π/2^level`, when exact and expressible at that level.
    #[must_use]
    pub fn exponent_at(self, level: u32) -> Option<u64> {
        match self {
            GlobalPhase::Exact {
                level: l,
                exponent,
            } if l <= level => Some(exponent << (level - l)),
            GlobalPhase::Exact {
                level: l,
                exponent,
            } => {
                let shift = l - level;
                (exponent % (1 << shift) == 0).then_some(exponent >> shift)
            }
            GlobalPhase::Approx { .. } => None,
        }
    }
}

impl SparseState {
    /// Empty (zero) state with the given normalization denominator.
    #[must_use]
    pub fn zero(n: usize, scale: u64) -> Self {
        Self {
            n,
            level: 0,
            scale,
            terms: BTreeMap::new(),
        }
    }

    /// Computational basis state `|ket⟩`.
    #[must_use]
    pub fn basis(ket: BitVector) -> Self {
        let mut s = Self::zero(ket.len(), 1);
        s.terms.insert(ket, Cyclotomic::root(0, 0));
        s
    }

    /// Build from terms `(ket, ω^exponent)` at `level`; repeated kets add up.
    pub fn from_phases(
        n: usize,
        level: u32,
        scale: u64,
        terms: impl IntoIterator<Item = (BitVector, u64)>,
    ) -> Result<Self> {
        let mut s = Self {
            n,
            level,
            scale,
            terms: BTreeMap::new(),
        };
        for (ket, e) in terms {
            s.add_term(ket, &Cyclotomic::root(level, e))?;
        }
        Ok(s)
    }

    pub fn add_term(&mut self, ket: BitVector, amp: &Cyclotomic) -> Result<()> {
        if ket.len() != self.n {
            return Err(Error::dimension(self.n, ket.len()));
        }
        if amp.level() > self.level {
            *self = self.lifted(amp.level());
        }
        let amp = amp.lifted(self.level);
        let entry = self
            .terms
            .entry(ket)
            .or_insert_with(|| Cyclotomic::zero(self.level));
        entry.add_assign(&amp);
        if entry.is_zero() {
            self.terms.retain(|_, a| !a.is_zero());
        }
        if self.terms.len() > SPARSE_TERM_CAP {
            return Err(Error::Resource {
                what: "sparse state terms",
                needed: self.terms.len(),
                cap: SPARSE_TERM_CAP,
            });
        }
        Ok(())
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Amplitudes are `coefficient / √scale`.
    #[must_use]
    pub fn scale(&self) -> u64 {
        self.scale
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BitVector, &Cyclotomic)> {
        self.terms.iter()
    }

    #[must_use]
    pub fn coefficient(&self, ket: &BitVector) -> Option<&Cyclotomic> {
        self.terms.get(ket)
    }

    /// Normalized complex amplitude of `ket`.
    #[must_use]
    pub fn amplitude(&self, ket: &BitVector) -> Complex64 {
        self.terms
            .get(ket)
            .map_or(Complex64::new(0.0, 0.0), |c| c.to_complex() / (self.scale as f64).sqrt())
    }

    #[must_use]
    pub fn lifted(&self, level: u32) -> Self {
        assert!(level <= MAX_LEVEL);
        if level <= self.level {
            return self.clone();
        }
        Self {
            n: self.n,
            level,
            scale: self.scale,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.clone(), a.lifted(level)))
                .collect(),
        }
    }

    /// Multiply each term by `ω^{phase(ket)}` with `ω = e^{iπ/2^level}`.
    pub fn map_phases(&self, level: u32, phase: impl Fn(&BitVector) -> u64) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::Parameter(format!(
                "phase level {level} exceeds {MAX_LEVEL}"
            )));
        }
        let lifted = self.lifted(level);
        let shift = lifted.level - level;
        Ok(Self {
            terms: lifted
                .terms
                .iter()
                .map(|(k, a)| (k.clone(), a.mul_root(phase(k) << shift)))
                .collect(),
            ..lifted
        })
    }

    /// Send each term `c|v⟩` to `ω^e c|v'⟩` where `(v', e) = f(v)`, at `level`.
    /// Terms landing on the same ket are added.
    pub fn map_kets(
        &self,
        level: u32,
        f: impl Fn(&BitVector) -> (BitVector, u64),
    ) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::Parameter(format!(
                "phase level {level} exceeds {MAX_LEVEL}"
            )));
        }
        let lifted = self.lifted(level);
        let shift = lifted.level - level;
        let mut out = Self::zero(self.n, self.scale).lifted(lifted.level);
        for (k, a) in &lifted.terms {
            let (ket, e) = f(k);
            out.add_term(ket, &a.mul_root(e << shift))?;
        }
        Ok(out)
    }

    /// Same state with the smallest power-of-four scale: common factors of
    /// two are moved out of the coefficients.
    #[must_use]
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        while out.scale.is_multiple_of(4) && !out.terms.is_empty() {
            let halved: Option<BTreeMap<_, _>> = out
                .terms
                .iter()
                .map(|(k, a)| a.halved().map(|h| (k.clone(), h)))
                .collect();
            match halved {
                Some(terms) => {
                    out.terms = terms;
                    out.scale /= 4;
                }
                None => break,
            }
        }
        out
    }

    /// Multiply every term by `ω^exponent` at `level`.
    pub fn times_root(&self, level: u32, exponent: u64) -> Result<Self> {
        self.map_phases(level, |_| exponent)
    }

    /// `Σ |c_v|² / scale` in floating point.
    #[must_use]
    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.to_complex().norm_sqr()).sum::<f64>() / self.scale as f64
    }

    /// Exact unit-norm test when all coefficients are roots of unity.
    #[must_use]
    pub fn is_normalized_exact(&self) -> Option<bool> {
        self.terms
            .values()
            .all(|a| a.as_root().is_some())
            .then_some(self.terms.len() as u64 == self.scale)
    }

    /// Kets of the support, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &BitVector> {
        self.terms.keys()
    }

    /// `Some(γ)` with `|γ| = 1` and `self = γ · other`.
    ///
    /// With equal scales the comparison is exact and decisive; otherwise it
    /// falls back to normalized floating-point amplitudes within `tol`,
    /// using the largest-magnitude amplitude of `other` as reference.
    #[must_use]
    pub fn equal_up_to_global_phase(&self, other: &Self, tol: f64) -> Option<GlobalPhase> {
        if self.n != other.n {
            return None;
        }
        let (a, b) = (self.reduced(), other.reduced());
        let (this, other) = (&a, &b);
        if this.scale == other.scale {
            if this.terms.len() != other.terms.len() {
                return None;
            }
            let level = this.level.max(other.level);
            let mut exponent = None;
            for ((ka, a), (kb, b)) in this.terms.iter().zip(&other.terms) {
                if ka != kb {
                    return None;
                }
                let a = a.lifted(level);
                let b = b.lifted(level);
                let e = match exponent {
                    None => a.ratio_root(&b)?,
                    Some(e) => e,
                };
                if b.mul_root(e) != a {
                    return None;
                }
                exponent = Some(e);
            }
            return Some(GlobalPhase::Exact {
                level,
                exponent: exponent.unwrap_or(0),
            });
        }
        let reference = other
            .terms
            .keys()
            .max_by(|x, y| {
                other
                    .amplitude(x)
                    .norm()
                    .total_cmp(&other.amplitude(y).norm())
            })?;
        let ratio = this.amplitude(reference) / other.amplitude(reference);
        if (ratio.norm() - 1.0).abs() > tol {
            return None;
        }
        let keys = this.terms.keys().chain(other.terms.keys());
        for k in keys {
            if (this.amplitude(k) - ratio * other.amplitude(k)).norm() > tol {
                return None;
            }
        }
        Some(GlobalPhase::Approx {
            re: ratio.re,
            im: ratio.im,
        })
    }

    /// `Some(λ)` with `self = λ · other` (any nonzero λ), in floating point.
    #[must_use]
    pub fn proportional_to(&self, other: &Self, tol: f64) -> Option<Complex64> {
        let reference = other.terms.keys().next()?;
        let ratio = self.amplitude(reference) / other.amplitude(reference);
        let keys = self.terms.keys().chain(other.terms.keys());
        for k in keys {
            if (self.amplitude(k) - ratio * other.amplitude(k)).norm() > tol {
                return None;
            }
        }
        Some(ratio)
    }
}

/// Semantic equality: same kets with the same normalized amplitudes.
impl PartialEq for SparseState {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && matches!(
                self.equal_up_to_global_phase(other, 0.0),
                Some(GlobalPhase::Exact { exponent: 0, .. })
            )
    }
}
