use std::fmt;

use serde::Serialize;

use super::enumerate::{check_cap, Span};
use super::{BitMatrix, BitVector};
use crate::error::{Error, Result};

/// Binary linear code, stored by its RREF generator matrix.
///
/// Two codes are equal iff they have the same block length and the same
/// canonical generator, i.e. iff they are the same set of codewords.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    gen: BitMatrix,
    pivots: Vec<usize>,
}

/// Result of the largest-power-of-two weight divisibility scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Divisibility {
    /// The zero code; every exponent applies.
    ZeroCode,
    Exponent(u32),
}

impl Divisibility {
    /// Whether the code is `2^m`-divisible.
    #[must_use]
    pub fn at_least(self, m: u32) -> bool {
        match self {
            Divisibility::ZeroCode => true,
            Divisibility::Exponent(e) => e >= m,
        }
    }
}

impl LinearCode {
    /// Span of `rows`; dependent rows are dropped.
    pub fn from_generators(n: usize, rows: impl IntoIterator<Item = BitVector>) -> Result<Self> {
        let m = BitMatrix::from_rows(n, rows)?;
        Ok(Self::from_matrix(&m))
    }

    #[must_use]
    pub fn from_matrix(m: &BitMatrix) -> Self {
        let e = m.rref();
        Self {
            n: m.cols(),
            gen: e.matrix,
            pivots: e.pivots,
        }
    }

    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            gen: BitMatrix::empty(n),
            pivots: Vec::new(),
        }
    }

    #[must_use]
    pub fn full(n: usize) -> Self {
        Self {
            n,
            gen: BitMatrix::identity(n),
            pivots: (0..n).collect(),
        }
    }

    /// The `[n, 1, n]` repetition code.
    #[must_use]
    pub fn repetition(n: usize) -> Self {
        Self::from_matrix(&BitMatrix::from_rows(n, [BitVector::ones(n)]).expect("length n"))
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.gen.row_count()
    }

    /// Canonical (RREF) generator matrix.
    #[must_use]
    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    #[must_use]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns; the unit vectors on these columns complete the
    /// generator to a basis of F₂ⁿ.
    #[must_use]
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.n).filter(|&c| !is_pivot[c]).collect()
    }

    /// Canonical coset representative of `v` modulo the code: the unique
    /// element of `v + C` that vanishes on every pivot column.
    #[must_use]
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.n, "length mismatch");
        let mut out = v.clone();
        for (row, &p) in self.gen.rows().iter().zip(&self.pivots) {
            if out.get(p) {
                out ^= row;
            }
        }
        out
    }

    #[must_use]
    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of a codeword with respect to the RREF generator.
    #[must_use]
    pub fn coordinates(&self, v: &BitVector) -> Option<BitVector> {
        if !self.contains(v) {
            return None;
        }
        Some(BitVector::from_bools(self.pivots.iter().map(|&p| v.get(p))))
    }

    /// Dual code `C⊥`, the null space of the generator.
    #[must_use]
    pub fn dual(&self) -> Self {
        let rows = self.free_columns().into_iter().map(|f| {
            let mut v = BitVector::from_indices(self.n, [f]);
            for (row, &p) in self.gen.rows().iter().zip(&self.pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            v
        });
        Self::from_generators(self.n, rows).expect("rows have length n")
    }

    /// Whether `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &Self) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::dimension(other.n, self.n));
        }
        Ok(self.gen.rows().iter().all(|r| other.contains(r)))
    }

    /// Reorder coordinates: coordinate `j` of the result is coordinate `perm[j]` here.
    #[must_use]
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Self::from_matrix(&self.gen.permute_columns(perm))
    }

    /// `times`-fold repetition `{(c, …, c)}`.
    #[must_use]
    pub fn repeat(&self, times: usize) -> Self {
        let rows = self.gen.rows().iter().map(|r| r.repeat(times));
        Self::from_generators(self.n * times, rows).expect("consistent lengths")
    }

    /// Visit every codeword once (exhaustive; respects the enumeration cap).
    pub fn for_each_codeword(&self, visit: impl FnMut(&BitVector)) -> Result<()> {
        check_cap("codeword enumeration", self.dim())?;
        let mut visit = visit;
        Span::new(self.gen.rows(), self.n).for_each(|_, v| visit(v));
        Ok(())
    }

    /// All codewords in lexicographic order of their printed strings.
    pub fn codewords(&self) -> Result<Vec<BitVector>> {
        let mut out = Vec::with_capacity(1 << self.dim().min(20));
        self.for_each_codeword(|v| out.push(v.clone()))?;
        out.sort();
        Ok(out)
    }

    /// `A_w` for `w = 0..=n`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        check_cap("weight distribution", self.dim())?;
        let span = Span::new(self.gen.rows(), self.n);
        let parts = span.map_chunks(|c| {
            let mut hist = vec![0u64; self.n + 1];
            let _ = span.walk_chunk(c, |_, v| {
                hist[v.weight()] += 1;
                std::ops::ControlFlow::Continue(())
            });
            hist
        });
        let mut hist = vec![0u64; self.n + 1];
        for part in parts {
            for (h, p) in hist.iter_mut().zip(part) {
                *h += p;
            }
        }
        Ok(hist)
    }

    /// Exact minimum distance by exhaustive enumeration.
    pub fn min_weight(&self) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::EmptySet("minimum weight of the zero code"));
        }
        min_weight_in_difference(self, &Self::zero(self.n))
    }

    /// Largest `m` such that every codeword weight is divisible by `2^m`.
    pub fn divisibility(&self) -> Result<Divisibility> {
        if self.dim() == 0 {
            return Ok(Divisibility::ZeroCode);
        }
        let hist = self.weight_distribution()?;
        let g = hist
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &count)| count > 0)
            .fold(0usize, |g, (w, _)| gcd(g, w));
        Ok(Divisibility::Exponent(g.trailing_zeros()))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[n={}, k={}] {:?}", self.n, self.dim(), self.gen)
    }
}

/// Basis of `sup` extended from a basis of `sub`: returns the rows of the
/// complement (reduced modulo `sub`), so that `sub.gen ∪ complement` spans `sup`.
pub(crate) fn complement_rows(sup: &LinearCode, sub: &LinearCode) -> Vec<BitVector> {
    let mut acc = sub.clone();
    let mut out = Vec::new();
    for row in sup.generator().rows() {
        let r = sub.reduce(row);
        if !acc.contains(&r) {
            acc = LinearCode::from_generators(
                acc.n,
                acc.generator().rows().iter().cloned().chain([r.clone()]),
            )
            .expect("consistent lengths");
            out.push(r);
        }
    }
    out
}

/// Basis of the coset space `C₁/C₂`, canonicalized: each representative is
/// reduced modulo `C₂`.
pub fn coset_basis(c1: &LinearCode, c2: &LinearCode) -> Result<BitMatrix> {
    if !c2.is_subcode_of(c1)? {
        return Err(Error::Structure("C2 is not a subcode of C1".into()));
    }
    BitMatrix::from_rows(c1.n(), complement_rows(c1, c2))
}

/// `min { w_H(x) : x ∈ sup \ sub }`, exhaustively.
pub fn min_weight_in_difference(sup: &LinearCode, sub: &LinearCode) -> Result<usize> {
    if !sub.is_subcode_of(sup)? {
        return Err(Error::Structure("subtrahend is not a subcode".into()));
    }
    if sup.dim() == sub.dim() {
        return Err(Error::EmptySet("difference of equal codes"));
    }
    check_cap("minimum-weight enumeration", sup.dim())?;
    // Basis order: sub first, complement last. A word lies in `sub` exactly
    // when its complement coefficients vanish.
    let mut basis: Vec<BitVector> = sub.generator().rows().to_vec();
    basis.extend(complement_rows(sup, sub));
    let sub_mask = (1u64 << sub.dim()) - 1;
    let span = Span::new(&basis, sup.n());
    span.map_chunks(|c| {
        let mut best = usize::MAX;
        let _ = span.walk_chunk(c, |label, v| {
            if label & !sub_mask != 0 {
                best = best.min(v.weight());
            }
            std::ops::ControlFlow::Continue(())
        });
        best
    })
    .into_iter()
    .min()
    .filter(|&w| w != usize::MAX)
    .ok_or(Error::EmptySet("difference of codes"))
}

/// Schur-product code `⟨x ∗ y : x ∈ C₁, y ∈ C₂⟩`, spanned by products of basis vectors.
pub fn schur_code(c1: &LinearCode, c2: &LinearCode) -> Result<LinearCode> {
    if c1.n() != c2.n() {
        return Err(Error::dimension(c1.n(), c2.n()));
    }
    let mut acc = BitMatrix::empty(c1.n());
    for a in c1.generator().rows() {
        for b in c2.generator().rows() {
            acc.push(a & b)?;
        }
        // Keep the working set small for large codes.
        if acc.row_count() > 4 * c1.n() {
            acc = acc.rref().matrix;
        }
    }
    Ok(LinearCode::from_matrix(&acc))
}
