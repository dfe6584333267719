//! CSS-T characterizations: exhaustive and basis-level tests of whether the
//! physical transversal `T` preserves the code space, signature search,
//! nonexistence certificates, and the logical action of diagonal gates.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::construction::CssPair;
use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::gf2::{check_cap, BitVector, LinearCode, Span};

/// Largest `k` for checks that enumerate all `2^k` coset elements.
pub const COSET_ENUMERATION_CAP: usize = 20;

/// Default bound on `dim C₂` for the basis-level obstruction scan.
pub const OBSTRUCTION_BASIS_CAP: usize = 12;

/// The condition a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `w(x) − 2w(x∗(y⊕s_Z)) ≡ 0 mod 8` for `x ∈ C₂`, `y ∈ C₁`.
    AllPairs,
    /// Same residue with `y` restricted to coset representatives.
    CosetPairs,
    /// `w(xᵢ) − 2w(xᵢ∗s_Z) ≡ 0 mod 8`.
    BasisWeight,
    /// `w(xᵢ∗xⱼ) − 2w(xᵢ∗xⱼ∗s_Z) ≡ 0 mod 4`.
    BasisPair,
    /// `w(xᵢ∗xⱼ∗x_p) ≡ 0 mod 2`.
    BasisTriple,
    /// `w(xᵢ∗y_q) − 2w(xᵢ∗y_q∗s_Z) ≡ 0 mod 4`.
    BasisCoset,
    /// `w(xᵢ∗xⱼ∗y_q) ≡ 0 mod 2`.
    BasisPairCoset,
    /// `w(xᵢ∗y_q∗y_r) ≡ 0 mod 2`.
    BasisCosetPair,
    /// `w(y_a) − 2w(y_a∗s_Z) ≡ 0 mod 8`: transversal `T` is the logical identity.
    TrivialAction,
    /// `w(y_a) − 2w(y_a∗s_Z) ≡ w(a) mod 8`: transversal `T` is logical `T`.
    LogicalT,
    /// `w(x) − 2w(x∗(y⊕s_Z)) ≡ 0 mod 2^{l+1}`: transversal `R_Z(π/2^l)` is logical.
    DiagonalLogical,
}

/// A failing instance. `x` is an element (or product of basis vectors) of
/// `C₂`, `y` an element (or product of basis vectors) on the `C₁` side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: Condition,
    pub x: Option<BitVector>,
    pub y: Option<BitVector>,
    /// Logical label `a` for coset-element conditions.
    pub a: Option<BitVector>,
    /// Basis labels such as `x1`, `y2` for basis-level conditions.
    pub indices: Vec<String>,
    /// Residue in `[0, modulus)`.
    pub residue: u64,
    pub expected: u64,
    pub modulus: u64,
}

impl Witness {
    /// Recompute the residue from the stored vectors with one weight evaluation.
    #[must_use]
    pub fn recompute(&self, s_z: &BitVector) -> u64 {
        let n = s_z.len();
        let zero = BitVector::zeros(n);
        let x = self.x.as_ref().unwrap_or(&zero);
        let y = self.y.as_ref().unwrap_or(&zero);
        let value = match self.condition {
            Condition::AllPairs | Condition::CosetPairs | Condition::DiagonalLogical => {
                residue(x, &(y ^ s_z))
            }
            Condition::BasisWeight | Condition::BasisPair => residue(x, s_z),
            Condition::BasisTriple => x.weight() as i64,
            Condition::BasisCoset => residue(&(x & y), s_z),
            Condition::BasisPairCoset | Condition::BasisCosetPair => x.and_weight(y) as i64,
            Condition::TrivialAction | Condition::LogicalT => residue(y, s_z),
        };
        modulo(value, self.modulus)
    }

    /// Whether the stored residue is a genuine violation for `s_z`.
    #[must_use]
    pub fn is_violation(&self, s_z: &BitVector) -> bool {
        let r = self.recompute(s_z);
        r == self.residue && r != self.expected % self.modulus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CsstReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    /// Number of instances evaluated before stopping.
    pub evaluated: u64,
}

impl CsstReport {
    fn from_witness(witness: Option<Witness>, evaluated: u64) -> Self {
        Self {
            verdict: witness.is_none(),
            witness,
            evaluated,
        }
    }
}

/// `w(x) − 2w(x∗v)`.
fn residue(x: &BitVector, v: &BitVector) -> i64 {
    x.weight() as i64 - 2 * x.and_weight(v) as i64
}

fn modulo(value: i64, modulus: u64) -> u64 {
    value.rem_euclid(modulus as i64) as u64
}

fn label(prefix: char, i: usize) -> String {
    format!("{prefix}{}", i + 1)
}

fn check_length(pair: &CssPair, s_z: &BitVector) -> Result<()> {
    if s_z.len() == pair.n() {
        Ok(())
    } else {
        Err(Error::dimension(pair.n(), s_z.len()))
    }
}

/// First `(x, y)` in walk order with `w(x) − 2w(x∗(y⊕s)) ≢ 0 mod modulus`,
/// `x` over `C₂` and `y` over the span of `y_basis`.
fn scan_pairs(
    pair: &CssPair,
    y_basis: &[BitVector],
    s_z: &BitVector,
    modulus: u64,
    condition: Condition,
) -> Result<CsstReport> {
    check_length(pair, s_z)?;
    let x_basis = pair.c2_basis().rows();
    check_cap("pair enumeration", x_basis.len() + y_basis.len())?;
    let n = pair.n();
    let xs = Span::new(x_basis, n);
    let ys = Span::new(y_basis, n);
    let witness = ys.find_first(|_, y| {
        let shifted = y ^ s_z;
        let mut hit = None;
        let _ = xs.walk_all(|_, x| {
            let r = modulo(residue(x, &shifted), modulus);
            if r == 0 {
                ControlFlow::Continue(())
            } else {
                hit = Some(Witness {
                    condition,
                    x: Some(x.clone()),
                    y: Some(y.clone()),
                    a: None,
                    indices: Vec::new(),
                    residue: r,
                    expected: 0,
                    modulus,
                });
                ControlFlow::Break(())
            }
        });
        hit
    });
    let evaluated = if witness.is_some() {
        0
    } else {
        1u64 << (x_basis.len() + y_basis.len())
    };
    Ok(CsstReport::from_witness(witness, evaluated))
}

/// CSS-T test over every `x ∈ C₂`, `y ∈ C₁`.
pub fn theorem3_check(css: &CssCode) -> Result<CsstReport> {
    theorem3_check_signature(css.pair(), css.s_z())
}

pub fn theorem3_check_signature(pair: &CssPair, s_z: &BitVector) -> Result<CsstReport> {
    scan_pairs(pair, pair.c1().generator().rows(), s_z, 8, Condition::AllPairs)
}

/// CSS-T test over `x ∈ C₂` and coset representatives `y ∈ C₁/C₂`.
pub fn corollary4_check(css: &CssCode) -> Result<CsstReport> {
    corollary4_check_signature(css.pair(), css.s_z())
}

pub fn corollary4_check_signature(pair: &CssPair, s_z: &BitVector) -> Result<CsstReport> {
    scan_pairs(pair, pair.coset_gens().rows(), s_z, 8, Condition::CosetPairs)
}

/// Conditions on basis tuples that do not involve `s_Z`.
fn lemma21_fixed(xs: &[BitVector], ys: &[BitVector], count: &mut u64) -> Option<Witness> {
    let parity = |condition, x: BitVector, y: Option<BitVector>, indices: Vec<String>| {
        let w = match &y {
            Some(y) => x.and_weight(y),
            None => x.weight(),
        };
        (w % 2 == 1).then_some(Witness {
            condition,
            x: Some(x),
            y,
            a: None,
            indices,
            residue: 1,
            expected: 0,
            modulus: 2,
        })
    };
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let xij = &xs[i] & &xs[j];
            for p in j + 1..xs.len() {
                *count += 1;
                let w = parity(
                    Condition::BasisTriple,
                    &xij & &xs[p],
                    None,
                    vec![label('x', i), label('x', j), label('x', p)],
                );
                if w.is_some() {
                    return w;
                }
            }
            for (q, y) in ys.iter().enumerate() {
                *count += 1;
                let w = parity(
                    Condition::BasisPairCoset,
                    xij.clone(),
                    Some(y.clone()),
                    vec![label('x', i), label('x', j), label('y', q)],
                );
                if w.is_some() {
                    return w;
                }
            }
        }
    }
    for (i, x) in xs.iter().enumerate() {
        for q in 0..ys.len() {
            for r in q + 1..ys.len() {
                *count += 1;
                let w = parity(
                    Condition::BasisCosetPair,
                    x.clone(),
                    Some(&ys[q] & &ys[r]),
                    vec![label('x', i), label('y', q), label('y', r)],
                );
                if w.is_some() {
                    return w;
                }
            }
        }
    }
    None
}

/// Conditions on basis tuples that involve `s_Z`.
fn lemma21_signed(
    xs: &[BitVector],
    ys: &[BitVector],
    s_z: &BitVector,
    count: &mut u64,
) -> Option<Witness> {
    let witness = |condition, x: BitVector, y: Option<BitVector>, indices, r, modulus| Witness {
        condition,
        x: Some(x),
        y,
        a: None,
        indices,
        residue: r,
        expected: 0,
        modulus,
    };
    for (i, x) in xs.iter().enumerate() {
        *count += 1;
        let r = modulo(residue(x, s_z), 8);
        if r != 0 {
            return Some(witness(Condition::BasisWeight, x.clone(), None, vec![label('x', i)], r, 8));
        }
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            *count += 1;
            let xij = &xs[i] & &xs[j];
            let r = modulo(residue(&xij, s_z), 4);
            if r != 0 {
                return Some(witness(
                    Condition::BasisPair,
                    xij,
                    None,
                    vec![label('x', i), label('x', j)],
                    r,
                    4,
                ));
            }
        }
    }
    for (i, x) in xs.iter().enumerate() {
        for (q, y) in ys.iter().enumerate() {
            *count += 1;
            let r = modulo(residue(&(x & y), s_z), 4);
            if r != 0 {
                return Some(witness(
                    Condition::BasisCoset,
                    x.clone(),
                    Some(y.clone()),
                    vec![label('x', i), label('y', q)],
                    r,
                    4,
                ));
            }
        }
    }
    None
}

/// Basis-level CSS-T test on the stored bases of `C₂` and `C₁/C₂`.
/// Conditions involving `s_Z` (weight, pair, coset) are tried before the
/// signature-free ones (triple, pair-coset, coset-pair).
#[must_use]
pub fn lemma21_check(css: &CssCode) -> CsstReport {
    lemma21_check_signature(css.pair(), css.s_z()).expect("signature length checked at construction")
}

pub fn lemma21_check_signature(pair: &CssPair, s_z: &BitVector) -> Result<CsstReport> {
    check_length(pair, s_z)?;
    let xs = pair.c2_basis().rows();
    let ys = pair.coset_gens().rows();
    let mut count = 0;
    let witness = lemma21_signed(xs, ys, s_z, &mut count).or_else(|| lemma21_fixed(xs, ys, &mut count));
    Ok(CsstReport::from_witness(witness, count))
}

/// `C₂ ∗ C₁ ⊆ C₁⊥`, tested on the spanning products `xᵢ`, `xᵢ∗xⱼ`, `xᵢ∗y_q`.
#[must_use]
pub fn corollary22_check(pair: &CssPair) -> bool {
    let g = pair.c1().generator().rows();
    let orthogonal = |v: &BitVector| g.iter().all(|r| !r.dot(v));
    let xs = pair.c2_basis().rows();
    let ys = pair.coset_gens().rows();
    xs.iter().enumerate().all(|(i, x)| {
        orthogonal(x)
            && xs[i + 1..].iter().all(|x2| orthogonal(&(x & x2)))
            && ys.iter().all(|y| orthogonal(&(x & y)))
    })
}

/// Outcome of a budgeted signature search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SignatureSearch {
    Found { s_z: BitVector, tried: u64 },
    /// Budget spent; resume from `next_cursor`.
    Inconclusive { tried: u64, next_cursor: u64 },
    /// Every representative fails. `pruned` is set when a condition that
    /// does not involve `s_Z` already fails, so no candidate was needed.
    Exhausted { tried: u64, pruned: bool },
}

/// Number of canonical representatives of `F₂ⁿ/C₁`, saturating.
#[must_use]
pub fn signature_space_size(pair: &CssPair) -> u64 {
    let free = pair.n() - pair.c1().dim();
    if free >= 64 {
        u64::MAX
    } else {
        1u64 << free
    }
}

/// The canonical representative with the given label: bit `j` of the label
/// selects the unit vector on the `j`-th non-pivot column of `C₁`.
#[must_use]
pub fn signature_candidate(c1: &LinearCode, label: u64) -> BitVector {
    let free = c1.free_columns();
    BitVector::from_indices(
        c1.n(),
        free.iter().enumerate().filter(|(j, _)| *j < 64 && (label >> j) & 1 == 1).map(|(_, &c)| c),
    )
}

/// Try up to `budget` canonical `s_Z` representatives starting at `cursor`,
/// in increasing label order, returning the first that passes the
/// basis-level CSS-T test.
#[must_use]
pub fn search_signature(pair: &CssPair, budget: u64, cursor: u64) -> SignatureSearch {
    let xs = pair.c2_basis().rows();
    let ys = pair.coset_gens().rows();
    let mut count = 0;
    if lemma21_fixed(xs, ys, &mut count).is_some() {
        return SignatureSearch::Exhausted {
            tried: 0,
            pruned: true,
        };
    }
    let total = signature_space_size(pair);
    let end = cursor.saturating_add(budget).min(total);
    let mut label = cursor;
    while label < end {
        let s_z = signature_candidate(pair.c1(), label);
        if lemma21_signed(xs, ys, &s_z, &mut count).is_none() {
            return SignatureSearch::Found {
                s_z,
                tried: label - cursor + 1,
            };
        }
        label += 1;
    }
    if end == total {
        SignatureSearch::Exhausted {
            tried: end.saturating_sub(cursor),
            pruned: false,
        }
    } else {
        SignatureSearch::Inconclusive {
            tried: end - cursor,
            next_cursor: end,
        }
    }
}

/// Which elements the obstruction scan tries for `u` and `y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionScope {
    /// `u` a basis vector of `C₂` or a sum of two; `y` a coset basis vector.
    #[default]
    Basis,
    /// `u` any element of `C₂`; `y` any nonzero coset element `y_a`.
    Broad,
}

/// `u ∗ y = (a∗b) ⊕ (c∗d)` with `u, a, b, c, d ∈ C₂`, `y ∈ C₁` and
/// `w(a∗b∗c∗d)` odd. Any CSS-T signature would force `w(u∗y) − 2w(u∗y∗s_Z)`
/// and `w(a∗b) − 2w(a∗b∗s_Z)`, `w(c∗d) − 2w(c∗d∗s_Z)` to vanish mod 4,
/// which makes `w(a∗b∗c∗d)` even. So a certificate rules out every `s_Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    pub u: BitVector,
    pub y: BitVector,
    pub pairs: [[BitVector; 2]; 2],
    pub quad_weight: usize,
    /// Basis labels for `u`, `y` and the four factors.
    pub labels: CertificateLabels,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateLabels {
    pub u: String,
    pub y: String,
    pub pairs: [[String; 2]; 2],
}

impl ObstructionCertificate {
    /// Re-check every claim of the certificate against `pair`.
    #[must_use]
    pub fn verify(&self, pair: &CssPair) -> bool {
        let c2 = pair.c2();
        let [[a, b], [c, d]] = &self.pairs;
        let n = pair.n();
        let lengths = [&self.u, &self.y, a, b, c, d].iter().all(|v| v.len() == n);
        lengths
            && [&self.u, a, b, c, d].iter().all(|v| c2.contains(v))
            && pair.c1().contains(&self.y)
            && &self.u & &self.y == &(a & b) ^ &(c & d)
            && (&(a & b) & &(c & d)).weight() == self.quad_weight
            && self.quad_weight % 2 == 1
    }
}

/// Search for an [`ObstructionCertificate`]. Factors are basis vectors of `C₂`.
pub fn obstruction_check(
    pair: &CssPair,
    scope: ObstructionScope,
) -> Result<Option<ObstructionCertificate>> {
    let xs = pair.c2_basis().rows();
    if scope == ObstructionScope::Basis && xs.len() > OBSTRUCTION_BASIS_CAP {
        return Err(Error::Resource {
            what: "obstruction basis scan",
            needed: xs.len(),
            cap: OBSTRUCTION_BASIS_CAP,
        });
    }
    let n = pair.n();
    // Products of basis pairs, i ≤ j, keyed by value; the first pair wins.
    let mut products: Vec<(BitVector, usize, usize)> = Vec::new();
    let mut index: HashMap<BitVector, usize> = HashMap::new();
    for i in 0..xs.len() {
        for j in i..xs.len() {
            let v = &xs[i] & &xs[j];
            index.entry(v.clone()).or_insert(products.len());
            products.push((v, i, j));
        }
    }

    let mut us: Vec<(BitVector, String)> = Vec::new();
    let mut ys: Vec<(BitVector, String)> = Vec::new();
    match scope {
        ObstructionScope::Basis => {
            for (i, x) in xs.iter().enumerate() {
                us.push((x.clone(), label('x', i)));
            }
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    us.push((&xs[i] ^ &xs[j], format!("{}+{}", label('x', i), label('x', j))));
                }
            }
            for (q, y) in pair.coset_gens().rows().iter().enumerate() {
                ys.push((y.clone(), label('y', q)));
            }
        }
        ObstructionScope::Broad => {
            check_cap("obstruction scan", xs.len())?;
            if pair.k() > COSET_ENUMERATION_CAP {
                return Err(Error::Resource {
                    what: "obstruction coset scan",
                    needed: pair.k(),
                    cap: COSET_ENUMERATION_CAP,
                });
            }
            for a in 1u64..(1 << xs.len()) {
                us.push((Span::new(xs, n).vector(a), combination_label('x', a)));
            }
            let gens = pair.coset_gens().rows();
            for a in 1u64..(1 << gens.len()) {
                ys.push((Span::new(gens, n).vector(a), combination_label('y', a)));
            }
        }
    }

    for (u, ul) in &us {
        for (y, yl) in &ys {
            let target = u & y;
            for (p1, (v1, i, j)) in products.iter().enumerate() {
                let rest = &target ^ v1;
                let Some(&p2) = index.get(&rest) else { continue };
                if p2 < p1 {
                    continue;
                }
                let (v2, k, l) = &products[p2];
                let quad = (v1 & v2).weight();
                if quad % 2 == 1 {
                    return Ok(Some(ObstructionCertificate {
                        u: u.clone(),
                        y: y.clone(),
                        pairs: [[xs[*i].clone(), xs[*j].clone()], [xs[*k].clone(), xs[*l].clone()]],
                        quad_weight: quad,
                        labels: CertificateLabels {
                            u: ul.clone(),
                            y: yl.clone(),
                            pairs: [
                                [label('x', *i), label('x', *j)],
                                [label('x', *k), label('x', *l)],
                            ],
                        },
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn combination_label(prefix: char, a: u64) -> String {
    (0..64)
        .filter(|j| (a >> j) & 1 == 1)
        .map(|j| label(prefix, j))
        .collect::<Vec<_>>()
        .join("+")
}

fn coset_scan(
    css: &CssCode,
    condition: Condition,
    expected: impl Fn(&BitVector) -> u64 + Sync,
) -> Result<CsstReport> {
    let k = css.k();
    if k > COSET_ENUMERATION_CAP {
        return Err(Error::Resource {
            what: "coset element enumeration",
            needed: k,
            cap: COSET_ENUMERATION_CAP,
        });
    }
    if !theorem3_check(css)?.verdict {
        return Err(Error::InvalidInput(
            "the code is not CSS-T, so transversal T has no logical action".into(),
        ));
    }
    let gens = css.pair().coset_gens().rows();
    let span = Span::new(gens, css.n());
    let witness = span.find_first(|label, y| {
        let a = BitVector::from_u64(k, label);
        let r = modulo(residue(y, css.s_z()), 8);
        let e = expected(&a) % 8;
        (r != e).then(|| Witness {
            condition,
            x: None,
            y: Some(y.clone()),
            a: Some(a),
            indices: Vec::new(),
            residue: r,
            expected: e,
            modulus: 8,
        })
    });
    Ok(CsstReport::from_witness(witness, 1 << k))
}

/// Transversal `T` is the logical identity: `w(y) − 2w(y∗s_Z) ≡ 0 mod 8`
/// for every coset element.
pub fn theorem19_check(css: &CssCode) -> Result<CsstReport> {
    coset_scan(css, Condition::TrivialAction, |_| 0)
}

/// Transversal `T` is logical transversal `T`: `w(y_a) − 2w(y_a∗s_Z) ≡ w(a) mod 8`.
pub fn theorem20_check(css: &CssCode) -> Result<CsstReport> {
    coset_scan(css, Condition::LogicalT, |a| a.weight() as u64)
}

/// Structural name of a diagonal logical action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionClass {
    Identity,
    /// Logical transversal `R_Z(π/2^j)`, or its adjoint; `j = 0` is `Z`.
    RotationZ { j: u32, dagger: bool },
    Unclassified,
}

impl ActionClass {
    #[must_use]
    pub fn name(self) -> String {
        match self {
            ActionClass::Identity => "identity".into(),
            ActionClass::RotationZ { j: 0, .. } => "Z".into(),
            ActionClass::RotationZ { j: 1, dagger } => if dagger { "S†" } else { "S" }.into(),
            ActionClass::RotationZ { j: 2, dagger } => if dagger { "T†" } else { "T" }.into(),
            ActionClass::RotationZ { j, dagger } => {
                format!("R_Z(π/{}){}", 1u64 << j, if dagger { "†" } else { "" })
            }
            ActionClass::Unclassified => "unclassified".into(),
        }
    }
}

/// Action of transversal `R_Z(π/2^l)` on a code, all exponents in units of
/// `π/2^l` modulo `2^{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalAction {
    pub l: u32,
    /// Whether the gate preserves the code space.
    pub logical: bool,
    pub witness: Option<Witness>,
    /// Global phase exponent `w(s_Z)`.
    pub global: u64,
    /// `c(a) = w(y_a) − 2w(y_a∗s_Z)`, indexed by `a` read as an integer
    /// (bit `i` is `aᵢ`).
    pub phases: Vec<u64>,
    /// Present when `logical`.
    pub class: Option<ActionClass>,
}

/// Largest `l` accepted by [`classify_diagonal_action`].
pub const MAX_ROTATION_LEVEL: u32 = 20;

/// Classify the action of the physical transversal `R_Z(π/2^l)`.
pub fn classify_diagonal_action(css: &CssCode, l: u32) -> Result<DiagonalAction> {
    if l > MAX_ROTATION_LEVEL {
        return Err(Error::Parameter(format!(
            "rotation level {l} exceeds {MAX_ROTATION_LEVEL}"
        )));
    }
    let k = css.k();
    if k > COSET_ENUMERATION_CAP {
        return Err(Error::Resource {
            what: "coset element enumeration",
            needed: k,
            cap: COSET_ENUMERATION_CAP,
        });
    }
    let modulus = 2u64 << l;
    let pair = css.pair();
    let scan = scan_pairs(
        pair,
        pair.c1().generator().rows(),
        css.s_z(),
        modulus,
        Condition::DiagonalLogical,
    )?;
    let mut phases = vec![0u64; 1 << k];
    Span::new(pair.coset_gens().rows(), css.n()).for_each(|label, y| {
        phases[label as usize] = modulo(residue(y, css.s_z()), modulus);
    });
    let class = scan.verdict.then(|| classify(&phases, k, l));
    Ok(DiagonalAction {
        l,
        logical: scan.verdict,
        witness: scan.witness,
        global: css.s_z().weight() as u64 % modulus,
        phases,
        class,
    })
}

fn classify(phases: &[u64], k: usize, l: u32) -> ActionClass {
    let modulus = 2u64 << l;
    if phases.iter().all(|&c| c == 0) {
        return ActionClass::Identity;
    }
    let weight = |a: usize| BitVector::from_u64(k, a as u64).weight() as u64;
    for j in 0..=l {
        let step = 1u64 << (l - j);
        for dagger in [false, true] {
            let matches = phases.iter().enumerate().all(|(a, &c)| {
                let plus = step * weight(a) % modulus;
                let want = if dagger { (modulus - plus) % modulus } else { plus };
                c == want
            });
            if matches {
                return ActionClass::RotationZ { j, dagger: dagger && j > 0 };
            }
        }
    }
    ActionClass::Unclassified
}
