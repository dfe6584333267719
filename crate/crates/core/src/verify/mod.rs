//! Brute-force ground truth: physical transversal gates applied to encoded
//! states and compared with the claimed logical actions.

mod dense;

pub use dense::{DenseState, DENSE_QUBIT_CAP};

use num_complex::Complex64;
use serde::Serialize;

use crate::construction::{repeat_pair, CssPair};
use crate::csst::{ActionClass, COSET_ENUMERATION_CAP};
use crate::css::{CssCode, GlobalPhase, SparseState};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Default float tolerance for dense comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// A per-qubit transversal gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateSpec {
    /// `R_Z(π/2^l) = diag(1, e^{iπ/2^l})`.
    Rz { l: u32 },
    T,
    S,
    H,
    /// `CZ` between qubit `i` of two blocks, for every `i`.
    CzTwoBlock,
}

impl GateSpec {
    /// The level `l` when the gate is a diagonal rotation.
    #[must_use]
    pub fn rotation_level(self) -> Option<u32> {
        match self {
            GateSpec::Rz { l } => Some(l),
            GateSpec::T => Some(2),
            GateSpec::S => Some(1),
            GateSpec::H | GateSpec::CzTwoBlock => None,
        }
    }
}

/// Transversal `R_Z(π/2^l)`: each ket `|v⟩` gains `e^{iπ w(v)/2^l}`.
pub fn apply_transversal_rz(state: &SparseState, l: u32) -> Result<SparseState> {
    state.map_phases(l, |v| v.weight() as u64)
}

/// Transversal `H` on a dense copy of the state.
pub fn apply_transversal_h(state: &SparseState) -> Result<DenseState> {
    let mut d = DenseState::from_sparse(state)?;
    d.hadamard_all();
    Ok(d)
}

/// `|ψ_A⟩ ⊗ |ψ_B⟩` after transversal `CZ`, kept as the two factors plus the
/// sign `(−1)^{w(u∗v)}` of every joint term `|u⟩|v⟩`.
#[derive(Clone, Debug)]
pub struct TwoBlockState {
    pub left: SparseState,
    pub right: SparseState,
    /// `odd[i][j]` is set when term `i` of `left` and term `j` of `right` meet
    /// with a minus sign, terms in ket order.
    pub odd: Vec<Vec<bool>>,
}

impl TwoBlockState {
    /// The single sign shared by all joint terms, if there is one.
    #[must_use]
    pub fn uniform_sign(&self) -> Option<bool> {
        let first = *self.odd.first()?.first()?;
        self.odd.iter().flatten().all(|&s| s == first).then_some(first)
    }
}

pub fn apply_transversal_cz_two_blocks(a: &SparseState, b: &SparseState) -> Result<TwoBlockState> {
    if a.n() != b.n() {
        return Err(Error::dimension(a.n(), b.n()));
    }
    let right: Vec<&BitVector> = b.support().collect();
    let odd = a
        .support()
        .map(|u| right.iter().map(|v| u.and_weight(v) % 2 == 1).collect())
        .collect();
    Ok(TwoBlockState {
        left: a.clone(),
        right: b.clone(),
        odd,
    })
}

/// Common phase of two sparse states, exact when possible.
#[must_use]
pub fn equal_up_to_global_phase(s1: &SparseState, s2: &SparseState, tol: f64) -> Option<GlobalPhase> {
    s1.equal_up_to_global_phase(s2, tol)
}

fn logical_labels(k: usize) -> Result<u64> {
    if k > COSET_ENUMERATION_CAP {
        return Err(Error::Resource {
            what: "logical basis states",
            needed: k,
            cap: COSET_ENUMERATION_CAP,
        });
    }
    Ok(1 << k)
}

/// Simulated action of transversal `R_Z(π/2^l)` on every logical basis state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulatedAction {
    pub l: u32,
    /// Exponent `e_a` in units of `π/2^l` with `R|a⟩_L = e^{iπ e_a/2^l}|a⟩_L`,
    /// or `None` when the image is not proportional to `|a⟩_L`.
    pub exponents: Vec<Option<u64>>,
}

impl SimulatedAction {
    /// Whether every logical basis state is mapped to a multiple of itself.
    #[must_use]
    pub fn is_diagonal(&self) -> bool {
        self.exponents.iter().all(Option::is_some)
    }

    /// `e_0`, the phase on `|0⟩_L`.
    #[must_use]
    pub fn global(&self) -> Option<u64> {
        self.exponents.first().copied().flatten()
    }

    /// `e_a − e_0 mod 2^{l+1}`, when diagonal.
    #[must_use]
    pub fn relative(&self) -> Option<Vec<u64>> {
        let modulus = 2u64 << self.l;
        let g = self.global()?;
        self.exponents
            .iter()
            .map(|e| e.map(|e| (e + modulus - g) % modulus))
            .collect()
    }
}

pub fn simulate_diagonal_action(css: &CssCode, l: u32) -> Result<SimulatedAction> {
    let count = logical_labels(css.k())?;
    let mut exponents = Vec::with_capacity(count as usize);
    for a in 0..count {
        let state = css.encode(&BitVector::from_u64(css.k(), a))?;
        let image = apply_transversal_rz(&state, l)?;
        let e = image
            .equal_up_to_global_phase(&state, 0.0)
            .and_then(|g| g.exponent_at(l));
        exponents.push(e);
    }
    Ok(SimulatedAction { l, exponents })
}

/// Outcome for one logical basis state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseCheck {
    pub a: BitVector,
    pub expected: u64,
    pub observed: Option<u64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma16Report {
    pub m: u32,
    pub p: u32,
    pub l: u32,
    pub n: usize,
    pub k: usize,
    pub expected_action: ActionClass,
    /// Global phase exponent `e_0`, in units of `π/2^l`.
    pub global: Option<u64>,
    pub per_state: Vec<PhaseCheck>,
    pub passed: bool,
}

/// Logical action predicted for transversal `R_Z(π/2^l)` on the `2^p`-fold
/// repetition of a pair from a `2^m`-divisible source.
pub fn predicted_repetition_action(m: u32, p: u32, l: u32) -> Result<ActionClass> {
    if m < 2 {
        return Err(Error::Parameter(format!("divisibility exponent m = {m} must be at least 2")));
    }
    if l + 1 > m + p {
        return Err(Error::Parameter(format!(
            "rotation level l = {l} exceeds m + p − 1 = {}",
            m + p - 1
        )));
    }
    Ok(if l < p {
        ActionClass::Identity
    } else {
        let j = l - p;
        ActionClass::RotationZ { j, dagger: j > 0 }
    })
}

/// Simulate transversal `R_Z(π/2^l)` on every encoded basis state of the
/// unsigned `2^p`-fold repetition of `base` and compare with the relative
/// phase `−2^p w(a)` (units of `π/2^l`) up to one global phase.
pub fn verify_lemma16(base: &CssPair, m: u32, p: u32, l: u32) -> Result<Lemma16Report> {
    let expected_action = predicted_repetition_action(m, p, l)?;
    let pair = repeat_pair(base, p)?;
    let css = CssCode::unsigned(pair)?;
    let sim = simulate_diagonal_action(&css, l)?;
    let modulus = 2u64 << l;
    let global = sim.global();
    let per_state: Vec<PhaseCheck> = sim
        .exponents
        .iter()
        .enumerate()
        .map(|(a, &observed)| {
            let a = BitVector::from_u64(css.k(), a as u64);
            let shift = (a.weight() as u64) << p;
            let expected = (modulus - shift % modulus) % modulus;
            let relative = observed.zip(global).map(|(e, g)| (e + modulus - g) % modulus);
            PhaseCheck {
                pass: relative == Some(expected),
                a,
                expected,
                observed: relative,
            }
        })
        .collect();
    Ok(Lemma16Report {
        m,
        p,
        l,
        n: css.n(),
        k: css.k(),
        expected_action,
        global,
        passed: per_state.iter().all(|c| c.pass),
        per_state,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliffordReport {
    /// Transversal `S` realizes logical transversal `S†`.
    pub s: CheckOutcome,
    /// Transversal `H` realizes logical transversal `H`; `None` when the code
    /// is not self-dual.
    pub h: Option<CheckOutcome>,
    /// Transversal `CZ` across two blocks realizes logical transversal `CZ`.
    pub cz: CheckOutcome,
}

impl CliffordReport {
    #[must_use]
    pub fn all_pass(&self) -> bool {
        self.s.pass && self.cz.pass && self.h.as_ref().is_some_and(|h| h.pass)
    }
}

/// Transversal `S` as logical transversal `S†`: relative phases `−w(a) mod 4`,
/// and each image is a code state.
pub fn verify_s(css: &CssCode) -> Result<CheckOutcome> {
    let sim = simulate_diagonal_action(css, 1)?;
    let Some(relative) = sim.relative() else {
        return Ok(CheckOutcome {
            pass: false,
            detail: "transversal S does not act diagonally on the logical basis".into(),
        });
    };
    let mismatch = relative.iter().enumerate().find(|&(a, &c)| {
        let w = u64::from((a as u64).count_ones());
        c != (4 - w % 4) % 4
    });
    let preserved = (0..logical_labels(css.k())?).try_fold(true, |ok, a| -> Result<bool> {
        let state = css.encode(&BitVector::from_u64(css.k(), a))?;
        Ok(ok && css.is_code_state(&apply_transversal_rz(&state, 1)?)?)
    })?;
    Ok(match (mismatch, preserved) {
        (None, true) => CheckOutcome {
            pass: true,
            detail: format!(
                "logical S† on all {} basis states, global phase i^{}; S = S†·Z",
                relative.len(),
                sim.global().unwrap_or(0)
            ),
        },
        (Some((a, c)), _) => CheckOutcome {
            pass: false,
            detail: format!("a = {}: relative phase i^{c}", BitVector::from_u64(css.k(), a as u64)),
        },
        (None, false) => CheckOutcome {
            pass: false,
            detail: "image left the code space".into(),
        },
    })
}

/// Transversal `H` as logical transversal `H`:
/// `H^{⊗n}|a⟩_L = γ·2^{−k/2} Σ_b (−1)^{a·b}|b⟩_L` with one `γ` for all `a`.
pub fn verify_h(css: &CssCode, tol: f64) -> Result<CheckOutcome> {
    if !css.pair().is_self_dual() {
        return Err(Error::InvalidInput(
            "transversal H needs a self-dual pair (C2 = C1⊥)".into(),
        ));
    }
    let k = css.k();
    let count = logical_labels(k)?;
    let encoded: Vec<SparseState> = (0..count)
        .map(|b| css.encode(&BitVector::from_u64(k, b)))
        .collect::<Result<_>>()?;
    let norm = (count as f64).sqrt().recip();
    let mut common: Option<Complex64> = None;
    for a in 0..count {
        let image = apply_transversal_h(&encoded[a as usize])?;
        let mut target = DenseState::zeros(css.n())?;
        for (b, state) in encoded.iter().enumerate() {
            let sign = if (a & b as u64).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            target.add_sparse(state, Complex64::new(sign * norm, 0.0))?;
        }
        let a_bits = BitVector::from_u64(k, a);
        let Some(gamma) = image.equal_up_to_global_phase(&target, tol) else {
            return Ok(CheckOutcome {
                pass: false,
                detail: format!("a = {a_bits}: image differs from the logical H image"),
            });
        };
        if let Some(g) = common {
            if (g - gamma).norm() > tol {
                return Ok(CheckOutcome {
                    pass: false,
                    detail: format!("a = {a_bits}: phase {gamma} differs from {g}"),
                });
            }
        }
        common = Some(gamma);
        if !image.is_stabilized_by(css, tol)? {
            return Ok(CheckOutcome {
                pass: false,
                detail: format!("a = {a_bits}: image left the code space"),
            });
        }
    }
    let g = common.unwrap_or(Complex64::new(1.0, 0.0));
    Ok(CheckOutcome {
        pass: true,
        detail: format!(
            "logical H on all {count} basis states within {tol:e}, global phase {:.6}{:+.6}i",
            g.re, g.im
        ),
    })
}

/// Transversal `CZ` across two blocks of `css` as logical transversal `CZ`:
/// on `|a⟩_L|b⟩_L` every joint term carries the same sign, equal to
/// `(−1)^{a·b}` times one sign common to all `(a, b)`.
pub fn verify_cz(css: &CssCode) -> Result<CheckOutcome> {
    let k = css.k();
    let count = logical_labels(k)?;
    let encoded: Vec<SparseState> = (0..count)
        .map(|b| css.encode(&BitVector::from_u64(k, b)))
        .collect::<Result<_>>()?;
    let mut common = None;
    for a in 0..count {
        for b in 0..count {
            let joint = apply_transversal_cz_two_blocks(&encoded[a as usize], &encoded[b as usize])?;
            let label = || format!("(a, b) = ({}, {})", BitVector::from_u64(k, a), BitVector::from_u64(k, b));
            let Some(sign) = joint.uniform_sign() else {
                return Ok(CheckOutcome {
                    pass: false,
                    detail: format!("{}: sign depends on the coset terms", label()),
                });
            };
            let relative = sign ^ ((a & b).count_ones() % 2 == 1);
            if *common.get_or_insert(relative) != relative {
                return Ok(CheckOutcome {
                    pass: false,
                    detail: format!("{}: sign differs from (−1)^(a·b)", label()),
                });
            }
        }
    }
    Ok(CheckOutcome {
        pass: true,
        detail: format!(
            "sign (−1)^(a·b) on all {} pairs, global sign {}",
            count * count,
            if common == Some(true) { "−1" } else { "+1" }
        ),
    })
}

/// Transversal `S`, `H` and two-block `CZ`. The `H` check is skipped for
/// codes that are not self-dual; `S` and `CZ` always run.
pub fn verify_clifford_suite(css: &CssCode, tol: f64) -> Result<CliffordReport> {
    let h = match verify_h(css, tol) {
        Ok(h) => Some(h),
        Err(Error::InvalidInput(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(CliffordReport {
        s: verify_s(css)?,
        h,
        cz: verify_cz(css)?,
    })
}
