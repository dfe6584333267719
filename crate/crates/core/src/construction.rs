//! Two-step CSS construction from a `2^m`-divisible binary code:
//! puncture `t` coordinates of a systematic generator, then take the
//! `2^p`-fold repetition of both codes of the resulting pair.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{
    coset_basis, min_weight_in_difference, BitMatrix, BitVector, Divisibility, LinearCode, Span,
};

/// Where a pair came from, kept so results are reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub source: Option<String>,
    pub t: usize,
    pub p: u32,
    /// Column permutation applied to the source before puncturing.
    pub permutation: Vec<usize>,
    /// Divisibility exponent `m` of the source code, when known.
    pub divisibility: Option<u32>,
}

/// Nested codes `C₂ ⊆ C₁` with a fixed basis of `C₂` and of `C₁/C₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssPair {
    c1: LinearCode,
    c2: LinearCode,
    c2_basis: BitMatrix,
    coset_gens: BitMatrix,
    provenance: Option<Provenance>,
}

impl CssPair {
    /// Pair with canonical bases: RREF for `C₂`, reduced representatives for `C₁/C₂`.
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<Self> {
        let coset_gens = coset_basis(&c1, &c2)?;
        let c2_basis = c2.generator().clone();
        Ok(Self {
            c1,
            c2,
            c2_basis,
            coset_gens,
            provenance: None,
        })
    }

    /// Pair given by explicit bases; `C₁` is the span of both. The order of
    /// the given vectors is kept, which matters for basis-level checks.
    pub fn from_bases(
        n: usize,
        c2_basis: Vec<BitVector>,
        coset_gens: Vec<BitVector>,
    ) -> Result<Self> {
        let c2_basis = BitMatrix::from_rows(n, c2_basis)?;
        let coset_gens = BitMatrix::from_rows(n, coset_gens)?;
        let c2 = LinearCode::from_matrix(&c2_basis);
        if c2.dim() != c2_basis.row_count() {
            return Err(Error::Structure("C2 basis is linearly dependent".into()));
        }
        let c1 = LinearCode::from_generators(
            n,
            c2_basis.rows().iter().chain(coset_gens.rows()).cloned(),
        )?;
        if c1.dim() != c2.dim() + coset_gens.row_count() {
            return Err(Error::Structure(
                "coset generators are dependent modulo C2".into(),
            ));
        }
        Ok(Self {
            c1,
            c2,
            c2_basis,
            coset_gens,
            provenance: None,
        })
    }

    /// Pair from `C₁` plus explicit bases of `C₂` and `C₁/C₂`, validated against `C₁`.
    pub fn from_parts(
        c1: LinearCode,
        c2_basis: Vec<BitVector>,
        coset_gens: Option<Vec<BitVector>>,
    ) -> Result<Self> {
        let n = c1.n();
        let c2_matrix = BitMatrix::from_rows(n, c2_basis.clone())?;
        let c2 = LinearCode::from_matrix(&c2_matrix);
        if !c2.is_subcode_of(&c1)? {
            return Err(Error::Structure("C2 is not a subcode of C1".into()));
        }
        let coset_gens = match coset_gens {
            Some(rows) => rows,
            None => coset_basis(&c1, &c2)?.into_rows(),
        };
        if let Some(bad) = coset_gens.iter().position(|y| !c1.contains(y)) {
            return Err(Error::Structure(format!(
                "coset generator {} is not in C1",
                bad + 1
            )));
        }
        let pair = Self::from_bases(n, c2_basis, coset_gens)?;
        if pair.c1 != c1 {
            return Err(Error::Structure(
                "C2 basis and coset generators do not span C1".into(),
            ));
        }
        Ok(pair)
    }

    #[must_use]
    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    #[must_use]
    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    #[must_use]
    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    /// The basis `x₁, …, x_{k₂}` of `C₂` used by basis-level checks.
    #[must_use]
    pub fn c2_basis(&self) -> &BitMatrix {
        &self.c2_basis
    }

    /// The basis `y₁, …, y_k` of `C₁/C₂`.
    #[must_use]
    pub fn coset_gens(&self) -> &BitMatrix {
        &self.coset_gens
    }

    #[must_use]
    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// Block length.
    #[must_use]
    pub fn n(&self) -> usize {
        self.c1.n()
    }

    /// Number of logical qubits `dim C₁ − dim C₂`.
    #[must_use]
    pub fn k(&self) -> usize {
        self.coset_gens.row_count()
    }

    /// `y_a = ⊕ aᵢ yᵢ` for `a` given as an integer (bit `i` is `aᵢ`).
    #[must_use]
    pub fn coset_element(&self, a: u64) -> BitVector {
        Span::new(self.coset_gens.rows(), self.n()).vector(a)
    }

    /// Whether `C₂ = C₁⊥`.
    #[must_use]
    pub fn is_self_dual(&self) -> bool {
        self.c1.dual() == self.c2
    }
}

/// `G = [I_k | A]` after reordering columns by `permutation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematicForm {
    pub redundancy: BitMatrix,
    pub permutation: Vec<usize>,
}

/// Systematic form of the RREF generator: pivot columns first, in order.
pub fn systematic_form(c: &LinearCode) -> Result<SystematicForm> {
    if c.dim() == 0 {
        return Err(Error::Parameter(
            "systematic form of the zero code".into(),
        ));
    }
    let k = c.dim();
    let mut permutation = c.pivots().to_vec();
    permutation.extend(c.free_columns());
    let permuted = c.generator().permute_columns(&permutation);
    let redundancy = BitMatrix::from_rows(
        c.n() - k,
        permuted.rows().iter().map(|r| r.slice(k..c.n())),
    )?;
    Ok(SystematicForm {
        redundancy,
        permutation,
    })
}

/// `(k, d, d⊥)` by exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeInvariants {
    pub k: usize,
    pub d: usize,
    pub d_dual: usize,
}

pub fn code_invariants(c: &LinearCode) -> Result<CodeInvariants> {
    let dual = c.dual();
    if c.dim() == 0 || dual.dim() == 0 {
        return Err(Error::Parameter(
            "need 0 < k < n for distance and dual distance".into(),
        ));
    }
    Ok(CodeInvariants {
        k: c.dim(),
        d: c.min_weight()?,
        d_dual: dual.min_weight()?,
    })
}

/// `t = ⌊min{k, d, d⊥} / 2⌋`.
pub fn derive_t(c: &LinearCode) -> Result<usize> {
    let inv = code_invariants(c)?;
    let min = inv.k.min(inv.d).min(inv.d_dual);
    if min < 2 {
        return Err(Error::Parameter(format!(
            "min{{k, d, d_dual}} = {min} < 2 yields no logical qubits"
        )));
    }
    Ok(min / 2)
}

/// Puncture the first `t` coordinates of the systematic form of `c`.
///
/// The first `t` rows of the punctured generator `[0 | A₁; I | A₂]` become the
/// coset generators, the remaining `k − t` rows generate `C₂`.
pub fn puncture_split(c: &LinearCode, t: usize) -> Result<CssPair> {
    let inv = code_invariants(c)?;
    let bound = inv.k.min(inv.d).min(inv.d_dual);
    if t == 0 || t >= bound {
        return Err(Error::Parameter(format!(
            "t = {t} must satisfy 1 <= t < min{{k, d, d_dual}} = {bound}"
        )));
    }
    let k = inv.k;
    let sf = systematic_form(c)?;
    let len = c.n() - t;
    let rows: Vec<BitVector> = sf
        .redundancy
        .rows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let ident = if i >= t {
                BitVector::from_indices(k - t, [i - t])
            } else {
                BitVector::zeros(k - t)
            };
            ident.concat(a)
        })
        .collect();
    let (coset, c2_rows) = rows.split_at(t);
    let pair = CssPair::from_bases(len, c2_rows.to_vec(), coset.to_vec()).map_err(|_| {
        Error::Structure("punctured generator lost rank; source is not suitable".into())
    })?;
    Ok(pair.with_provenance(Provenance {
        source: None,
        t,
        p: 0,
        permutation: sf.permutation,
        divisibility: None,
    }))
}

/// Largest supported repetition exponent.
pub const MAX_REPETITION_EXPONENT: u32 = 16;

/// `2^p`-fold repetition of both codes (and of both bases).
pub fn repeat_pair(pair: &CssPair, p: u32) -> Result<CssPair> {
    if p > MAX_REPETITION_EXPONENT {
        return Err(Error::Parameter(format!(
            "p = {p} exceeds {MAX_REPETITION_EXPONENT}"
        )));
    }
    if p == 0 {
        return Ok(pair.clone());
    }
    let times = 1usize << p;
    let rep = |m: &BitMatrix| m.rows().iter().map(|r| r.repeat(times)).collect::<Vec<_>>();
    let mut out = CssPair::from_bases(
        pair.n() * times,
        rep(pair.c2_basis()),
        rep(pair.coset_gens()),
    )?;
    out.provenance = pair.provenance.clone().map(|mut prov| {
        prov.p += p;
        prov
    });
    Ok(out)
}

/// One failed condition of a proposition suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub item: u8,
    pub description: String,
    pub value: i64,
    /// 0 means an exact comparison rather than a congruence.
    pub modulus: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl PropositionReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, item: u8, value: i64, modulus: u64, expected: i64, what: impl FnOnce() -> String) {
        self.checks += 1;
        let holds = if modulus == 0 {
            value == expected
        } else {
            (value - expected).rem_euclid(modulus as i64) == 0
        };
        if !holds {
            self.violations.push(Violation {
                item,
                description: what(),
                value,
                modulus,
            });
        }
    }
}

/// Properties of the redundancy part `A` of a systematic generator of a
/// `2^m`-divisible code:
/// 1. any `p` distinct rows (2 ≤ p ≤ min{m, k}) have Schur weight ≡ 0 mod `2^{m−p+1}`;
/// 2. every row has weight ≡ −1 mod `2^m`;
/// 3. the rows are independent.
#[must_use]
pub fn check_proposition6(a: &BitMatrix, m: u32) -> PropositionReport {
    let mut report = PropositionReport::default();
    let k = a.row_count();
    for p in 2..=(m as usize).min(k) {
        let modulus = 1u64 << (m as usize - p + 1);
        for rows in (0..k).combinations(p) {
            let product = rows
                .iter()
                .skip(1)
                .fold(a.row(rows[0]).clone(), |acc, &r| &acc & a.row(r));
            report.check(1, product.weight() as i64, modulus, 0, || {
                format!("Schur product of rows {rows:?}")
            });
        }
    }
    let modulus = 1u64 << m;
    for (i, r) in a.rows().iter().enumerate() {
        report.check(2, r.weight() as i64, modulus, -1, || format!("weight of row {i}"));
    }
    let rank = a.rank();
    report.check(3, rank as i64, 0, k as i64, || {
        format!("rank {rank} of a {k}-row matrix")
    });
    report
}

/// Properties of a pair punctured from a `2^m`-divisible code:
/// 1. `C₂` is `2^m`-divisible;
/// 2. `w_H(x ∗ y) ≡ 0 mod 2^{m−1}` for all `x ∈ C₂`, `y ∈ C₁`;
/// 3. `w_H(y_a) ≡ −w_H(a) mod 2^m` for every coset combination `a`.
pub fn check_proposition22(pair: &CssPair, m: u32) -> Result<PropositionReport> {
    crate::gf2::check_cap("proposition suite", pair.c1().dim() + pair.c2().dim())?;
    crate::gf2::check_cap("proposition suite", pair.k())?;
    let mut report = PropositionReport::default();
    let n = pair.n();

    let div = pair.c2().divisibility()?;
    report.checks += 1;
    if !div.at_least(m) {
        let got = match div {
            Divisibility::Exponent(e) => e as i64,
            Divisibility::ZeroCode => -1,
        };
        report.violations.push(Violation {
            item: 1,
            description: format!("C2 is only 2^{got}-divisible"),
            value: got,
            modulus: 1 << m,
        });
    }

    let mod2 = 1u64 << m.saturating_sub(1);
    let c2_span = Span::new(pair.c2().generator().rows(), n);
    let c1_span = Span::new(pair.c1().generator().rows(), n);
    let failure = c2_span.find_first(|_, x| {
        let mut bad = None;
        c1_span.for_each(|_, y| {
            let w = x.and_weight(y) as u64;
            if bad.is_none() && !w.is_multiple_of(mod2) {
                bad = Some((x.clone(), y.clone(), w));
            }
        });
        bad
    });
    report.checks += 1;
    if let Some((x, y, w)) = failure {
        report.violations.push(Violation {
            item: 2,
            description: format!("w_H(x*y) for x={x}, y={y}"),
            value: w as i64,
            modulus: mod2,
        });
    }

    let modulus = 1u64 << m;
    let coset = Span::new(pair.coset_gens().rows(), n);
    coset.for_each(|a, y| {
        report.check(3, y.weight() as i64, modulus, -(a.count_ones() as i64), || {
            format!("w_H(y_a) for a={a:b}")
        });
    });
    Ok(report)
}

/// Lemma-style invariants of a Step-1 pair with respect to its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PunctureReport {
    pub t: usize,
    pub dim_c1: usize,
    pub dim_c2: usize,
    pub expected_dim_c1: usize,
    pub expected_dim_c2: usize,
    pub min_weight_c1: usize,
    pub min_weight_c2_dual: usize,
    pub source_self_dual: bool,
    pub c2_equals_c1_dual: bool,
}

impl PunctureReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.dim_c1 == self.expected_dim_c1
            && self.dim_c2 == self.expected_dim_c2
            && self.min_weight_c1 >= self.t
            && self.min_weight_c2_dual >= self.t
            && (!self.source_self_dual || self.c2_equals_c1_dual)
    }
}

/// Dimensions, `d(C₁) ≥ t`, `d(C₂⊥) ≥ t`, and `C₂ = C₁⊥` for self-dual sources.
pub fn verify_puncture(source: &LinearCode, pair: &CssPair) -> Result<PunctureReport> {
    let t = pair.k();
    Ok(PunctureReport {
        t,
        dim_c1: pair.c1().dim(),
        dim_c2: pair.c2().dim(),
        expected_dim_c1: source.dim(),
        expected_dim_c2: source.dim() - t,
        min_weight_c1: pair.c1().min_weight()?,
        min_weight_c2_dual: pair.c2().dual().min_weight()?,
        source_self_dual: source.dual() == *source,
        c2_equals_c1_dual: pair.is_self_dual(),
    })
}

/// `(x, …, x) ∈ C₂^{(p)}` for every basis vector `x` of `C₂`, and
/// `(z, 0, …, 0) ∈ (C₁^{(p)})⊥` for every basis vector `z` of `C₁⊥`.
pub fn check_repetition_witnesses(base: &CssPair, p: u32) -> Result<bool> {
    let rep = repeat_pair(base, p)?;
    let times = 1usize << p;
    let n = base.n();
    let x_ok = base
        .c2()
        .generator()
        .rows()
        .iter()
        .all(|x| rep.c2().contains(&x.repeat(times)));
    let rep_c1_dual = rep.c1().dual();
    let z_ok = base
        .c1()
        .dual()
        .generator()
        .rows()
        .iter()
        .all(|z| rep_c1_dual.contains(&z.concat(&BitVector::zeros(n * (times - 1)))));
    Ok(x_ok && z_ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairParameters {
    pub n: usize,
    pub k: usize,
    pub d_x: usize,
    pub d_z: usize,
    pub d: usize,
}

/// Exact `[[n, k, d]]` with `d_X = min_{C₁∖C₂} w_H` and `d_Z = min_{C₂⊥∖C₁⊥} w_H`.
pub fn pair_parameters(pair: &CssPair) -> Result<PairParameters> {
    let d_x = min_weight_in_difference(pair.c1(), pair.c2())?;
    let d_z = min_weight_in_difference(&pair.c2().dual(), &pair.c1().dual())?;
    Ok(PairParameters {
        n: pair.n(),
        k: pair.k(),
        d_x,
        d_z,
        d: d_x.min(d_z),
    })
}
