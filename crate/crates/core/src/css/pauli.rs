use std::fmt;

use super::state::SparseState;
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// `ι^κ E(a,b)` with `E(a,b) = ⊗ᵢ ι^{aᵢbᵢ} X^{aᵢ} Z^{bᵢ}` and `ι = √−1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    a: BitVector,
    b: BitVector,
    phase: u8,
}

impl PauliOperator {
    pub fn new(a: BitVector, b: BitVector, phase_exponent: u8) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::dimension(a.len(), b.len()));
        }
        Ok(Self {
            a,
            b,
            phase: phase_exponent % 4,
        })
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self::x(BitVector::zeros(n))
    }

    /// `E(a, 0)`.
    #[must_use]
    pub fn x(a: BitVector) -> Self {
        let b = BitVector::zeros(a.len());
        Self { a, b, phase: 0 }
    }

    /// `E(0, b)`.
    #[must_use]
    pub fn z(b: BitVector) -> Self {
        let a = BitVector::zeros(b.len());
        Self { a, b, phase: 0 }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.a.len()
    }

    #[must_use]
    pub fn x_part(&self) -> &BitVector {
        &self.a
    }

    #[must_use]
    pub fn z_part(&self) -> &BitVector {
        &self.b
    }

    /// Power of `ι` in front of `E(a,b)`.
    #[must_use]
    pub fn phase_exponent(&self) -> u8 {
        self.phase
    }

    /// Multiply by `ι^k`.
    #[must_use]
    pub fn times_i(&self, k: u8) -> Self {
        Self {
            phase: (self.phase + k) % 4,
            ..self.clone()
        }
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::dimension(self.n(), other.n()));
        }
        let a = &self.a ^ &other.a;
        let b = &self.b ^ &other.b;
        let e = i64::from(self.phase)
            + i64::from(other.phase)
            + self.a.and_weight(&self.b) as i64
            + other.a.and_weight(&other.b) as i64
            + 2 * self.b.and_weight(&other.a) as i64
            - a.and_weight(&b) as i64;
        Ok(Self {
            a,
            b,
            phase: e.rem_euclid(4) as u8,
        })
    }

    /// Symplectic test `w(a∗b') + w(b∗a') ≡ 0 mod 2`.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::dimension(self.n(), other.n()));
        }
        Ok((self.a.and_weight(&other.b) + self.b.and_weight(&other.a)).is_multiple_of(2))
    }

    /// `ι^{κ+w(a∗b)} (−1)^{w(b∗v)}` as a power of `ι`, together with `v ⊕ a`.
    #[must_use]
    pub fn act_on_ket(&self, v: &BitVector) -> (BitVector, u64) {
        let e = u64::from(self.phase)
            + self.a.and_weight(&self.b) as u64
            + 2 * self.b.and_weight(v) as u64;
        (v ^ &self.a, e % 4)
    }

    pub fn apply(&self, state: &SparseState) -> Result<SparseState> {
        if state.n() != self.n() {
            return Err(Error::dimension(self.n(), state.n()));
        }
        // ι = ω at level 1.
        state.map_kets(1, |v| self.act_on_ket(v))
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ι^{} E({}, {})", self.phase, self.a, self.b)
    }
}
