use num_complex::Complex64;

use crate::css::{CssCode, SparseState};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Largest qubit count for dense simulation.
pub const DENSE_QUBIT_CAP: usize = 22;

/// Full state vector; amplitude `i` belongs to the ket whose position `j`
/// holds bit `j` of `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_qubits(n: usize) -> Result<()> {
    if n > DENSE_QUBIT_CAP {
        return Err(Error::Resource {
            what: "dense state qubits",
            needed: n,
            cap: DENSE_QUBIT_CAP,
        });
    }
    Ok(())
}

impl DenseState {
    pub fn zeros(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Self {
            n,
            amps: vec![Complex64::new(0.0, 0.0); 1 << n],
        })
    }

    pub fn from_sparse(state: &SparseState) -> Result<Self> {
        let mut out = Self::zeros(state.n())?;
        out.add_sparse(state, Complex64::new(1.0, 0.0))?;
        Ok(out)
    }

    /// `self += factor · state`.
    pub fn add_sparse(&mut self, state: &SparseState, factor: Complex64) -> Result<()> {
        if state.n() != self.n {
            return Err(Error::dimension(self.n, state.n()));
        }
        for ket in state.support() {
            self.amps[ket.to_u64() as usize] += factor * state.amplitude(ket);
        }
        Ok(())
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    #[must_use]
    pub fn amplitude(&self, ket: &BitVector) -> Complex64 {
        self.amps[ket.to_u64() as usize]
    }

    #[must_use]
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// `H^{⊗n}` by the fast Walsh-Hadamard transform.
    pub fn hadamard_all(&mut self) {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        let mut h = 1;
        while h < self.amps.len() {
            for block in self.amps.chunks_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * scale;
                    *b = (x - y) * scale;
                }
            }
            h *= 2;
        }
    }

    /// `Some(γ)` with `|γ| = 1` and `self ≈ γ · other` within `tol` per
    /// amplitude, using the largest amplitude of `other` as reference.
    #[must_use]
    pub fn equal_up_to_global_phase(&self, other: &Self, tol: f64) -> Option<Complex64> {
        if self.n != other.n {
            return None;
        }
        let (reference, r) = other
            .amps
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
        if r.norm() <= tol {
            return self.amps.iter().all(|a| a.norm() <= tol).then_some(Complex64::new(1.0, 0.0));
        }
        let gamma = self.amps[reference] / r;
        if (gamma.norm() - 1.0).abs() > tol {
            return None;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .all(|(a, b)| (a - gamma * b).norm() <= tol)
            .then_some(gamma)
    }

    /// Whether every signed stabilizer generator fixes the state within `tol`.
    pub fn is_stabilized_by(&self, css: &CssCode, tol: f64) -> Result<bool> {
        if css.n() != self.n {
            return Err(Error::dimension(css.n(), self.n));
        }
        let powers = [
            Complex64::new(1.0, 0.0),
            Complex64::i(),
            Complex64::new(-1.0, 0.0),
            -Complex64::i(),
        ];
        for g in css.stabilizer_generators() {
            let a = g.x_part().to_u64() as usize;
            let b = g.z_part().to_u64() as usize;
            let base = u32::from(g.phase_exponent()) + (a & b).count_ones();
            for (i, amp) in self.amps.iter().enumerate() {
                let e = base + 2 * (b & i).count_ones();
                if (self.amps[i ^ a] - powers[(e % 4) as usize] * amp).norm() > tol {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
