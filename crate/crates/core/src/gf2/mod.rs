//! Exact linear algebra over F₂: packed vectors, matrices, linear codes,
//! Schur products and exhaustive code oracles.

mod bits;
mod code;
mod enumerate;
mod matrix;

pub use bits::BitVector;
pub use code::{coset_basis, min_weight_in_difference, schur_code, Divisibility, LinearCode};
pub use enumerate::{enumeration_cap, set_enumeration_cap, DEFAULT_ENUMERATION_CAP};
pub use matrix::{BitMatrix, Echelon};

pub(crate) use enumerate::{check_cap, Span};

use crate::error::{Error, Result};

/// Hamming weight `w_H(v)`.
#[must_use]
pub fn weight(v: &BitVector) -> usize {
    v.weight()
}

/// Componentwise product `u ∗ v`.
pub fn schur(u: &BitVector, v: &BitVector) -> Result<BitVector> {
    u.checked_schur(v)
}

/// Schur product of a non-empty list of equal-length vectors.
pub fn schur_all<'a>(vectors: impl IntoIterator<Item = &'a BitVector>) -> Result<BitVector> {
    let mut it = vectors.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::InvalidInput("empty Schur product".into()))?;
    it.try_fold(first.clone(), |acc, v| acc.checked_schur(v))
}

/// Inclusion-exclusion expansion of the weight of `⊕ coeffs[i]·vectors[i]`:
///
/// `Σ_{i≥1} (−2)^{i−1} Σ_{|J|=i} (Π_{j∈J} a_j) · w_H(∗_{j∈J} x_j)`.
///
/// The sum runs over all subsets of the selected vectors, so the cost is
/// exponential in the number of nonzero coefficients.
pub fn xor_weight_expansion(vectors: &[BitVector], coeffs: &[bool]) -> Result<i64> {
    if vectors.len() != coeffs.len() {
        return Err(Error::dimension(vectors.len(), coeffs.len()));
    }
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
            return Err(Error::dimension(first.len(), bad.len()));
        }
    }
    let selected: Vec<&BitVector> = vectors
        .iter()
        .zip(coeffs)
        .filter_map(|(v, &a)| a.then_some(v))
        .collect();
    if selected.len() > 24 {
        return Err(Error::Resource {
            what: "inclusion-exclusion terms",
            needed: selected.len(),
            cap: 24,
        });
    }
    let mut total = 0i64;
    for mask in 1u32..(1u32 << selected.len()) {
        let size = mask.count_ones();
        let product = schur_all(
            selected
                .iter()
                .enumerate()
                .filter(|(j, _)| (mask >> j) & 1 == 1)
                .map(|(_, v)| *v),
        )?;
        total += (-2i64).pow(size - 1) * product.weight() as i64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn schur_identity_and_annihilator() {
        let v = bv("1011001");
        assert_eq!(schur(&v, &BitVector::ones(7)).unwrap(), v);
        assert!(schur(&v, &BitVector::zeros(7)).unwrap().is_zero());
        assert_eq!(schur(&v, &v).unwrap(), v);
        assert!(schur(&v, &bv("10")).is_err());
    }

    #[test]
    fn expansion_small_cases() {
        let v = bv("1101101");
        assert_eq!(xor_weight_expansion(std::slice::from_ref(&v), &[true]).unwrap(), 5);
        let u = bv("1100000");
        let w = bv("0011000");
        assert_eq!(
            xor_weight_expansion(&[u.clone(), w.clone()], &[true, true]).unwrap(),
            4
        );
        assert_eq!(xor_weight_expansion(&[u, w], &[false, false]).unwrap(), 0);
        assert!(xor_weight_expansion(&[v], &[true, false]).is_err());
    }
}
