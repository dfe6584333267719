use serde::Serialize;

use super::pauli::PauliOperator;
use super::state::SparseState;
use crate::construction::{pair_parameters, CssPair};
use crate::error::{Error, Result};
use crate::gf2::{check_cap, BitVector, LinearCode, Span};

/// Largest `dim C₂` for which code states are built term by term.
pub const STATE_DIM_CAP: usize = 22;

/// `CSS(C₁, C₂, s_X, s_Z)`: X-stabilizers `(−1)^{w(s_X∗x)} E(x,0)` for
/// `x ∈ C₂` and Z-stabilizers `(−1)^{w(s_Z∗z)} E(0,z)` for `z ∈ C₁⊥`.
///
/// `s_X` is stored reduced modulo `C₂⊥`. `s_Z` is kept as given: shifting it
/// by `c ∈ C₁` leaves the code space unchanged but relabels the logical basis,
/// since `|0…0⟩_L` is `P|s_Z⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pair: CssPair,
    c1_dual: LinearCode,
    s_x: BitVector,
    s_z: BitVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CssDistance {
    pub d_x: usize,
    pub d_z: usize,
    pub d: usize,
}

impl CssCode {
    pub fn new(pair: CssPair, s_x: BitVector, s_z: BitVector) -> Result<Self> {
        let n = pair.n();
        for s in [&s_x, &s_z] {
            if s.len() != n {
                return Err(Error::dimension(n, s.len()));
            }
        }
        if !pair.c2().is_subcode_of(pair.c1())? {
            return Err(Error::Structure("C2 is not a subcode of C1".into()));
        }
        if pair.k() == 0 {
            return Err(Error::Structure("C1 = C2 encodes no logical qubit".into()));
        }
        let s_x = pair.c2().dual().reduce(&s_x);
        let c1_dual = pair.c1().dual();
        Ok(Self {
            pair,
            c1_dual,
            s_x,
            s_z,
        })
    }

    /// Positively signed code `s_X = s_Z = 0`.
    pub fn unsigned(pair: CssPair) -> Result<Self> {
        let n = pair.n();
        Self::new(pair, BitVector::zeros(n), BitVector::zeros(n))
    }

    #[must_use]
    pub fn pair(&self) -> &CssPair {
        &self.pair
    }

    #[must_use]
    pub fn s_x(&self) -> &BitVector {
        &self.s_x
    }

    #[must_use]
    pub fn s_z(&self) -> &BitVector {
        &self.s_z
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.pair.n()
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.pair.k()
    }

    /// `X̄ᵢ = E(yᵢ, 0)`, with `i` counted from 1.
    pub fn logical_x(&self, i: usize) -> Result<PauliOperator> {
        if i == 0 || i > self.k() {
            return Err(Error::Parameter(format!(
                "logical index {i} outside 1..={}",
                self.k()
            )));
        }
        Ok(PauliOperator::x(self.pair.coset_gens().row(i - 1).clone()))
    }

    /// Signed X-stabilizer generator from the `i`-th basis vector of `C₂` (from 0).
    #[must_use]
    pub fn x_stabilizer(&self, i: usize) -> PauliOperator {
        let x = self.pair.c2_basis().row(i);
        PauliOperator::x(x.clone()).times_i(2 * u8::from(self.s_x.dot(x)))
    }

    /// Signed Z-stabilizer generator from the `j`-th basis vector of `C₁⊥` (from 0).
    #[must_use]
    pub fn z_stabilizer(&self, j: usize) -> PauliOperator {
        let z = self.c1_dual.generator().row(j);
        PauliOperator::z(z.clone()).times_i(2 * u8::from(self.s_z.dot(z)))
    }

    /// All signed stabilizer generators, X-type first.
    #[must_use]
    pub fn stabilizer_generators(&self) -> Vec<PauliOperator> {
        (0..self.pair.c2().dim())
            .map(|i| self.x_stabilizer(i))
            .chain((0..self.c1_dual.dim()).map(|j| self.z_stabilizer(j)))
            .collect()
    }

    /// `y_a = ⊕ aᵢ yᵢ` for `a ∈ F₂^k`.
    pub fn coset_element(&self, a: &BitVector) -> Result<BitVector> {
        if a.len() != self.k() {
            return Err(Error::dimension(self.k(), a.len()));
        }
        let mut y = BitVector::zeros(self.n());
        for i in a.iter_ones() {
            y ^= self.pair.coset_gens().row(i);
        }
        Ok(y)
    }

    fn c2_span(&self) -> Result<Span<'_>> {
        let dim = self.pair.c2().dim();
        check_cap("code state terms", dim)?;
        if dim > STATE_DIM_CAP {
            return Err(Error::Resource {
                what: "code state terms",
                needed: dim,
                cap: STATE_DIM_CAP,
            });
        }
        Ok(Span::new(self.pair.c2_basis().rows(), self.n()))
    }

    /// `|a⟩_L = |C₂|^{−1/2} Σ_{x∈C₂} (−1)^{w(s_X∗x)} |y_a ⊕ x ⊕ s_Z⟩`.
    pub fn encode(&self, a: &BitVector) -> Result<SparseState> {
        let offset = &self.coset_element(a)? ^ &self.s_z;
        let span = self.c2_span()?;
        let mut terms = Vec::with_capacity(1 << span.dim());
        span.for_each(|_, x| terms.push((x ^ &offset, u64::from(self.s_x.dot(x)))));
        SparseState::from_phases(self.n(), 0, 1 << span.dim(), terms)
    }

    /// `P_𝒮|v⟩ = [v ⊕ s_Z ∈ C₁] |C₂|^{−1} Σ_{x∈C₂} (−1)^{w(s_X∗x)} |v ⊕ x⟩`.
    pub fn apply_projector(&self, ket: &BitVector) -> Result<SparseState> {
        self.apply_projector_state(&SparseState::basis(ket.clone()))
    }

    /// `P_𝒮` applied to an arbitrary sparse state.
    pub fn apply_projector_state(&self, state: &SparseState) -> Result<SparseState> {
        if state.n() != self.n() {
            return Err(Error::dimension(self.n(), state.n()));
        }
        let span = self.c2_span()?;
        let size = 1u64 << span.dim();
        let mut out = SparseState::zero(self.n(), state.scale() * size * size).lifted(state.level());
        for (v, c) in state.terms() {
            if !self.pair.c1().contains(&(v ^ &self.s_z)) {
                continue;
            }
            let mut failed = None;
            span.for_each(|_, x| {
                if failed.is_none() {
                    let amp = c.mul_root(u64::from(self.s_x.dot(x)) << state.level());
                    if let Err(e) = out.add_term(v ^ x, &amp) {
                        failed = Some(e);
                    }
                }
            });
            if let Some(e) = failed {
                return Err(e);
            }
        }
        Ok(out.reduced())
    }

    /// Whether `state` lies in the code space: `P_𝒮 ψ = ψ` exactly.
    pub fn is_code_state(&self, state: &SparseState) -> Result<bool> {
        Ok(!state.is_zero() && self.apply_projector_state(state)? == *state)
    }

    /// `d_X = min_{C₁∖C₂} w_H`, `d_Z = min_{C₂⊥∖C₁⊥} w_H`.
    pub fn distance(&self) -> Result<CssDistance> {
        let p = pair_parameters(&self.pair)?;
        Ok(CssDistance {
            d_x: p.d_x,
            d_z: p.d_z,
            d: p.d,
        })
    }
}

/// Build `CSS(C₁, C₂, s_X, s_Z)`.
pub fn new_css(pair: CssPair, s_x: BitVector, s_z: BitVector) -> Result<CssCode> {
    CssCode::new(pair, s_x, s_z)
}

pub fn css_distance(css: &CssCode) -> Result<CssDistance> {
    css.distance()
}
