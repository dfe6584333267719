#![allow(dead_code)]

use divcss::catalog;
use divcss::construction::{derive_t, puncture_split, repeat_pair, CssPair};
use divcss::{BitVector, LinearCode};
use rand::Rng;

pub fn code(name: &str) -> LinearCode {
    catalog::entry(name).unwrap().code
}

/// Puncture-split pair of a catalog code with the automatic `t`.
pub fn derived_pair(name: &str) -> CssPair {
    let c = code(name);
    puncture_split(&c, derive_t(&c).unwrap()).unwrap()
}

pub fn repeated_pair(name: &str, p: u32) -> CssPair {
    repeat_pair(&derived_pair(name), p).unwrap()
}

/// `(1, 0)`: ones on the first half, zeros on the second.
pub fn half_ones(n: usize) -> BitVector {
    BitVector::ones(n / 2).concat(&BitVector::zeros(n / 2))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> BitVector {
    BitVector::from_bools((0..n).map(|_| rng.gen_bool(0.5)))
}

/// `C₂ ⊆ C₁` with `dim C₁ = k1`, `dim C₂ = k2` when the random rows are independent.
pub fn random_pair(rng: &mut impl Rng, n: usize, k1: usize, k2: usize) -> CssPair {
    loop {
        let rows: Vec<BitVector> = (0..k1).map(|_| random_vector(rng, n)).collect();
        let c1 = LinearCode::from_generators(n, rows.clone()).unwrap();
        if c1.dim() != k1 {
            continue;
        }
        if let Ok(pair) = CssPair::from_bases(n, rows[..k2].to_vec(), rows[k2..].to_vec()) {
            return pair;
        }
    }
}

/// Every word of the span of `rows`, by direct subset sums.
pub fn span_words(rows: &[BitVector], n: usize) -> Vec<BitVector> {
    (0u64..1 << rows.len())
        .map(|mask| {
            let mut v = BitVector::zeros(n);
            for (j, r) in rows.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    v ^= r;
                }
            }
            v
        })
        .collect()
}

/// `min w(v)` over `v ∈ span(sup) ∖ span(sub)`, comparing sorted word lists.
pub fn brute_min_difference(sup: &[BitVector], sub: &[BitVector], n: usize) -> usize {
    let inner: std::collections::HashSet<BitVector> = span_words(sub, n).into_iter().collect();
    span_words(sup, n)
        .into_iter()
        .filter(|v| !inner.contains(v))
        .map(|v| v.weight())
        .min()
        .unwrap()
}

/// Basis of the dual, found by testing every vector of F₂ⁿ (small `n` only).
pub fn brute_dual(rows: &[BitVector], n: usize) -> Vec<BitVector> {
    let members: Vec<BitVector> = (0u64..1 << n)
        .map(|i| BitVector::from_u64(n, i))
        .filter(|v| rows.iter().all(|r| !r.dot(v)))
        .collect();
    let mut basis: Vec<BitVector> = Vec::new();
    for v in members {
        let code = LinearCode::from_generators(n, basis.clone()).unwrap();
        if !code.contains(&v) {
            basis.push(v);
        }
    }
    basis
}
