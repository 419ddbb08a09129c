//! Seeded random unitaries from the rotation-invariant distribution.
//!
//! Columns of a matrix of i.i.d. standard complex Gaussians are
//! orthonormalized left to right by modified Gram-Schmidt (two passes per
//! column). The resulting `R` factor has a positive real diagonal, which
//! makes the factorization, and so the sample, unique.
//!
//! Gaussians are drawn column by column, real part then imaginary part, so
//! the first column depends only on the first `2 * dim` draws and can be
//! produced on its own by [`random_start_state`].

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{check_qubits, kernel, seeded_rng, DenseUnitary, StateVector, MAX_DENSE_DIM};

fn gaussian_column<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        })
        .collect()
}

fn normalize(v: &mut [Complex64]) {
    let norm = kernel::norm_sqr(v).sqrt();
    kernel::scale_in_place(Complex64::new(1.0 / norm, 0.0), v);
}

pub fn random_unitary(seed: u64, dim: usize) -> Result<DenseUnitary> {
    if dim > MAX_DENSE_DIM {
        return Err(Error::DenseTooLarge {
            dim,
            max: MAX_DENSE_DIM,
        });
    }
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "unitary dimension {dim} is not a power of two >= 2"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        let mut v = gaussian_column(&mut rng, dim);
        for _pass in 0..2 {
            for q in &columns {
                let c = kernel::inner(q, &v);
                kernel::axpy(-c, q, &mut v);
            }
        }
        normalize(&mut v);
        columns.push(v);
    }
    Ok(DenseUnitary::from_columns_unchecked(dim, &columns))
}

/// First column of `random_unitary(seed, 2^n_qubits)`, bit for bit, in
/// O(N) time. Unlike the full matrix this is not limited to dense sizes.
pub fn random_start_state(seed: u64, n_qubits: usize) -> Result<StateVector> {
    let dim = check_qubits(n_qubits)?;
    let mut v = gaussian_column(&mut seeded_rng(seed), dim);
    normalize(&mut v);
    StateVector::new(n_qubits, v)
}
