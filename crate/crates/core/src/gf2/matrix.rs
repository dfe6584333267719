use std::fmt;

use super::BitVector;
use crate::error::{Error, Result};

/// Row-major matrix over F₂. All rows share the column count `cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    /// Nonzero rows only, in pivot order.
    pub matrix: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    #[must_use]
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = BitVector>) -> Result<Self> {
        let rows: Vec<BitVector> = rows.into_iter().collect();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::dimension(cols, bad.len()));
        }
        Ok(Self { cols, rows })
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::from_indices(n, [i])).collect(),
        }
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn push(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::dimension(self.cols, row.len()));
        }
        self.rows.push(row);
        Ok(())
    }

    #[must_use]
    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let rows = (0..self.cols)
            .map(|c| BitVector::from_bools(self.rows.iter().map(|r| r.get(c))))
            .collect();
        Self {
            cols: self.rows.len(),
            rows,
        }
    }

    /// Apply the same column permutation to every row.
    #[must_use]
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Self {
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.permute(perm)).collect(),
        }
    }

    /// Gauss-Jordan elimination; the row space is preserved.
    #[must_use]
    pub fn rref(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Echelon {
            matrix: Self {
                cols: self.cols,
                rows,
            },
            rank,
            pivots,
        }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// `v·Mᵀ`: the inner product of `v` with every row.
    #[must_use]
    pub fn syndrome(&self, v: &BitVector) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.dot(v)))
    }

    /// F₂ combination of rows selected by the set bits of `coeffs`.
    #[must_use]
    pub fn combination(&self, coeffs: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.cols);
        for i in coeffs.iter_ones() {
            out ^= &self.rows[i];
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
