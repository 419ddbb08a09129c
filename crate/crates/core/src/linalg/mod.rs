//! Dense complex statevectors and the reflection primitives built on them.
//!
//! A [`StateVector`] always holds exactly `2^n` amplitudes with unit norm
//! (within [`OPERATOR_TOL`]). Nothing here renormalizes silently: an
//! operation whose output drifts off the unit sphere returns
//! [`Error::NotNormalized`].
//!
//! Basis index `x` is the little-endian value of the qubit string, so qubit
//! `q` is bit `q` of the index.
//!
//! Reflections are never materialized as matrices. [`DenseUnitary`] exists
//! for explicit and random preparations and is capped at
//! [`MAX_DENSE_DIM`].

pub mod kernel;
mod measure;
mod unitary;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use measure::{measure_sample, measure_samples};
pub use unitary::DenseUnitary;

/// A complex amplitude.
pub type Amplitude = Complex64;

/// Tolerance for operator identities and the normalization invariant.
pub const OPERATOR_TOL: f64 = 1e-10;
/// Tolerance for closed-form scalar checks.
pub const SCALAR_TOL: f64 = 1e-12;
/// Largest dimension a [`DenseUnitary`] may have.
pub const MAX_DENSE_DIM: usize = 1 << 10;
/// Largest register a [`StateVector`] may describe.
pub const MAX_QUBITS: usize = 30;

/// Generator used for every seeded draw in the crate: ChaCha8 keyed through
/// `SeedableRng::seed_from_u64`. Both are specified bit-for-bit, so samples
/// and random unitaries reproduce across platforms.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Amplitude>,
}

/// Fixture form: `{"n_qubits": n, "amplitudes": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct StateRepr {
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl TryFrom<StateRepr> for StateVector {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<Self> {
        let amps = r
            .amplitudes
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        StateVector::new(r.n_qubits, amps)
    }
}

impl From<StateVector> for StateRepr {
    fn from(s: StateVector) -> Self {
        StateRepr {
            n_qubits: s.n_qubits,
            amplitudes: s.amps.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

pub(crate) fn check_qubits(n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(n_qubits));
    }
    Ok(1usize << n_qubits)
}

impl StateVector {
    /// Validates length, finiteness and normalization.
    pub fn new(n_qubits: usize, amps: Vec<Amplitude>) -> Result<Self> {
        let dim = check_qubits(n_qubits)?;
        if amps.len() != dim {
            return Err(Error::BadLength {
                n_qubits,
                found: amps.len(),
            });
        }
        if let Some(index) = amps.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        let norm_sqr = kernel::norm_sqr(&amps);
        if (norm_sqr - 1.0).abs() > OPERATOR_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { n_qubits, amps })
    }

    /// Builds a state from a buffer whose length is a power of two.
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength {
                n_qubits: 0,
                found: len,
            });
        }
        Self::new(len.trailing_zeros() as usize, amps)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = check_qubits(n_qubits)?;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// The equal superposition `(1/sqrt N) sum_x |x>`.
    pub fn uniform(n_qubits: usize) -> Result<Self> {
        let dim = check_qubits(n_qubits)?;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            n_qubits,
            amps: vec![a; dim],
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amps
    }

    pub fn amplitude(&self, index: usize) -> Option<Amplitude> {
        self.amps.get(index).copied()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps.get(index).map_or(0.0, Complex64::norm_sqr)
    }

    pub fn norm_sqr(&self) -> f64 {
        kernel::norm_sqr(&self.amps)
    }

    /// Multiplies by a unit-modulus scalar.
    pub fn with_phase(&self, phase: Amplitude) -> Result<Self> {
        let mut amps = self.amps.clone();
        kernel::scale_in_place(phase, &mut amps);
        Self::new(self.n_qubits, amps)
    }

    /// `-self`, by literal amplitude negation.
    pub fn negated(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| -a).collect(),
        }
    }

    /// Largest per-amplitude modulus difference; infinite on dimension mismatch.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        kernel::max_abs_diff(&self.amps, &other.amps)
    }

    pub(crate) fn check_same_dim(&self, other: &StateVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Amplitude] {
        &mut self.amps
    }
}

/// `<a|b>` with conjugation on `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Amplitude> {
    a.check_same_dim(b)?;
    Ok(kernel::inner(&a.amps, &b.amps))
}

/// `(I - 2|mirror><mirror|) target`, in O(N).
pub fn reflect_about_state(mirror: &StateVector, target: &StateVector) -> Result<StateVector> {
    mirror.check_same_dim(target)?;
    let mut out = target.amps.clone();
    kernel::reflect_in_place(&mirror.amps, &mut out);
    StateVector::new(target.n_qubits, out)
}

/// `(I - 2 sum_d |d><d|) target` for an orthonormal family `basis`.
pub fn reflect_about_subspace(basis: &[StateVector], target: &StateVector) -> Result<StateVector> {
    for d in basis {
        d.check_same_dim(target)?;
    }
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let overlap = kernel::inner(&basis[i].amps, &basis[j].amps).norm();
            if worst.is_none_or(|(_, _, w)| overlap > w) {
                worst = Some((i, j, overlap));
            }
        }
    }
    if let Some((first, second, overlap)) = worst {
        if overlap > OPERATOR_TOL {
            return Err(Error::NonOrthonormalBasis {
                first,
                second,
                overlap,
            });
        }
    }
    // All projections are taken against the unmodified target.
    let coeffs: Vec<Amplitude> = basis
        .iter()
        .map(|d| kernel::inner(&d.amps, &target.amps) * 2.0)
        .collect();
    let mut out = target.amps.clone();
    for (d, c) in basis.iter().zip(coeffs) {
        kernel::axpy(-c, &d.amps, &mut out);
    }
    StateVector::new(target.n_qubits, out)
}

/// `U I_psi U^dagger` applied to `target`, evaluated literally.
///
/// Equals `reflect_about_state(U psi, target)`.
pub fn conjugated_reflection(
    u: &DenseUnitary,
    psi: &StateVector,
    target: &StateVector,
) -> Result<StateVector> {
    psi.check_same_dim(target)?;
    let pulled_back = u.apply_adjoint(target)?;
    let reflected = reflect_about_state(psi, &pulled_back)?;
    u.apply(&reflected)
}
