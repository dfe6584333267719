//! Exhaustive walks over the span of a basis.
//!
//! The span is cut into `2^split` chunks by the coefficients of the last
//! `split` basis vectors; inside a chunk the remaining coefficients follow a
//! Gray code so that each step is one XOR. Chunks may run in parallel but
//! results are always combined in chunk order, so output never depends on
//! the thread schedule.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};

use super::BitVector;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 28;

static ENUMERATION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENUMERATION_CAP);

/// Largest dimension whose span may be enumerated exhaustively.
#[must_use]
pub fn enumeration_cap() -> usize {
    ENUMERATION_CAP.load(Ordering::Relaxed)
}

/// Process-wide override of the enumeration cap (clamped to 40).
pub fn set_enumeration_cap(dim: usize) {
    ENUMERATION_CAP.store(dim.min(40), Ordering::Relaxed);
}

pub(crate) fn check_cap(what: &'static str, dim: usize) -> Result<()> {
    let cap = enumeration_cap();
    if dim > cap {
        Err(Error::Resource {
            what,
            needed: dim,
            cap,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn par_map<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

#[inline]
pub(crate) fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// The span of `basis`, viewed as a set of `2^basis.len()` labelled vectors.
///
/// The label of a vector is its coefficient word: bit `j` selects `basis[j]`.
#[derive(Clone, Copy)]
pub(crate) struct Span<'a> {
    basis: &'a [BitVector],
    len: usize,
}

impl<'a> Span<'a> {
    pub(crate) fn new(basis: &'a [BitVector], len: usize) -> Self {
        debug_assert!(basis.len() < 64);
        Self { basis, len }
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    fn split(&self) -> usize {
        if self.dim() >= 14 {
            8
        } else {
            0
        }
    }

    pub(crate) fn chunk_count(&self) -> usize {
        1 << self.split()
    }

    /// Visit every vector of chunk `chunk` in walk order.
    pub(crate) fn walk_chunk<F>(&self, chunk: usize, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(u64, &BitVector) -> ControlFlow<()>,
    {
        let low = self.dim() - self.split();
        let base = (chunk as u64) << low;
        let mut cur = BitVector::zeros(self.len);
        for j in 0..self.split() {
            if (chunk >> j) & 1 == 1 {
                cur ^= &self.basis[low + j];
            }
        }
        visit(base, &cur)?;
        for i in 1u64..(1u64 << low) {
            cur ^= &self.basis[i.trailing_zeros() as usize];
            visit(base | gray(i), &cur)?;
        }
        ControlFlow::Continue(())
    }

    /// Visit every vector sequentially in walk order, stopping on `Break`.
    pub(crate) fn walk_all<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(u64, &BitVector) -> ControlFlow<()>,
    {
        for c in 0..self.chunk_count() {
            self.walk_chunk(c, &mut visit)?;
        }
        ControlFlow::Continue(())
    }

    pub(crate) fn for_each(&self, mut visit: impl FnMut(u64, &BitVector)) {
        for c in 0..self.chunk_count() {
            let _ = self.walk_chunk(c, |label, v| {
                visit(label, v);
                ControlFlow::Continue(())
            });
        }
    }

    /// Run `f` on every chunk (in parallel when enabled), results in chunk order.
    pub(crate) fn map_chunks<T: Send>(&self, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
        par_map(self.chunk_count(), f)
    }

    /// First vector in walk order for which `pred` returns `Some`.
    pub(crate) fn find_first<T: Send>(
        &self,
        pred: impl Fn(u64, &BitVector) -> Option<T> + Sync + Send,
    ) -> Option<T> {
        self.map_chunks(|c| {
            let mut found = None;
            let _ = self.walk_chunk(c, |label, v| match pred(label, v) {
                Some(t) => {
                    found = Some(t);
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            });
            found
        })
        .into_iter()
        .flatten()
        .next()
    }

    /// Combination selected by `label`.
    pub(crate) fn vector(&self, label: u64) -> BitVector {
        let mut out = BitVector::zeros(self.len);
        for (j, b) in self.basis.iter().enumerate() {
            if (label >> j) & 1 == 1 {
                out ^= b;
            }
        }
        out
    }
}
