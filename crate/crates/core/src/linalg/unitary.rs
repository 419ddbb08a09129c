use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{kernel, StateVector, MAX_DENSE_DIM, OPERATOR_TOL};
use crate::error::{Error, Result};

/// A dense unitary matrix, stored row-major. Only for `dim <= MAX_DENSE_DIM`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UnitaryRepr", into = "UnitaryRepr")]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

/// File form: `{"dim": d, "entries": [[[re, im], ...], ...]}`, one inner
/// array per row.
#[derive(Serialize, Deserialize)]
struct UnitaryRepr {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<UnitaryRepr> for DenseUnitary {
    type Error = Error;

    fn try_from(r: UnitaryRepr) -> Result<Self> {
        if r.entries.len() != r.dim {
            return Err(Error::DimensionMismatch {
                expected: r.dim,
                found: r.entries.len(),
            });
        }
        let mut entries = Vec::with_capacity(r.dim * r.dim);
        for row in r.entries {
            if row.len() != r.dim {
                return Err(Error::DimensionMismatch {
                    expected: r.dim,
                    found: row.len(),
                });
            }
            entries.extend(row.into_iter().map(|[re, im]| Complex64::new(re, im)));
        }
        DenseUnitary::new(r.dim, entries)
    }
}

impl From<DenseUnitary> for UnitaryRepr {
    fn from(u: DenseUnitary) -> Self {
        UnitaryRepr {
            dim: u.dim,
            entries: u
                .entries
                .chunks(u.dim)
                .map(|row| row.iter().map(|a| [a.re, a.im]).collect())
                .collect(),
        }
    }
}

fn check_dim(dim: usize) -> Result<()> {
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
    Ok(())
}

impl DenseUnitary {
    /// Validates shape, finiteness and `U^dagger U = I` within 1e-10.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if let Some(index) = entries.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        let u = Self { dim, entries };
        let deviation = u.unitarity_deviation();
        if deviation > OPERATOR_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(u)
    }

    /// Builds from columns without re-checking unitarity. Callers guarantee
    /// orthonormality by construction.
    pub(crate) fn from_columns_unchecked(dim: usize, columns: &[Vec<Complex64>]) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (j, col) in columns.iter().enumerate() {
            for (i, a) in col.iter().enumerate() {
                entries[i * dim + j] = *a;
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(Self { dim, entries })
    }

    /// Walsh-Hadamard transform on `n` qubits.
    pub fn hadamard(n_qubits: usize) -> Result<Self> {
        let dim = super::check_qubits(n_qubits)?;
        check_dim(dim)?;
        let scale = 1.0 / (dim as f64).sqrt();
        let entries = (0..dim * dim)
            .map(|k| {
                let (i, j) = (k / dim, k % dim);
                let sign = if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign * scale, 0.0)
            })
            .collect();
        Ok(Self { dim, entries })
    }

    /// A unitary with `U|0> = target`: a Householder reflection sending
    /// `|0>` to `e^{-i phi} target` (phi = arg <0|target>), times `e^{i phi}`.
    ///
    /// Any amplitude where both `|0>` and `target` vanish gives an exactly
    /// zero entry in the first column and an exactly diagonal row.
    pub fn householder_to(target: &StateVector) -> Result<Self> {
        let dim = target.dim();
        check_dim(dim)?;
        let t = target.amplitudes();
        let phase = if t[0].norm() > 0.0 {
            t[0] / t[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        // v = e0 - conj(phase) t
        let mut v: Vec<Complex64> = t.iter().map(|a| -phase.conj() * a).collect();
        v[0] += 1.0;
        let vv = kernel::norm_sqr(&v);
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let delta = if i == j { 1.0 } else { 0.0 };
                let h = if vv > 0.0 {
                    Complex64::new(delta, 0.0) - v[i] * v[j].conj() * (2.0 / vv)
                } else {
                    Complex64::new(delta, 0.0)
                };
                entries[i * dim + j] = phase * h;
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        Self { dim: d, entries }
    }

    /// Max entry of `|U^dagger U - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.entries[k * d + i].conj() * self.entries[k * d + j];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn column(&self, col: usize) -> Result<StateVector> {
        if col >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: col,
                dim: self.dim,
            });
        }
        let amps = (0..self.dim).map(|i| self.entry(i, col)).collect();
        StateVector::from_amplitudes(amps)
    }

    fn check_state(&self, s: &StateVector) -> Result<()> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.dim(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        self.check_state(s)?;
        let x = s.amplitudes();
        let out = self
            .entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        StateVector::new(s.n_qubits(), out)
    }

    /// `U^dagger s` without forming the adjoint.
    pub fn apply_adjoint(&self, s: &StateVector) -> Result<StateVector> {
        self.check_state(s)?;
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (row, xi) in self.entries.chunks(d).zip(s.amplitudes()) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * xi;
            }
        }
        StateVector::new(s.n_qubits(), out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_is_unitary_and_maps_zero_to_uniform() {
        for n in 1..=5 {
            let h = DenseUnitary::hadamard(n).unwrap();
            assert!(h.unitarity_deviation() < 1e-12);
            let w = h.apply(&StateVector::basis(n, 0).unwrap()).unwrap();
            assert!(w.max_deviation(&StateVector::uniform(n).unwrap()) < 1e-15);
        }
        assert!(matches!(DenseUnitary::hadamard(11), Err(Error::DenseTooLarge { .. })));
    }

    #[test]
    fn rejects_non_unitary() {
        let entries = vec![Complex64::new(1.0, 0.0); 4];
        assert!(matches!(DenseUnitary::new(2, entries), Err(Error::NotUnitary { .. })));
        assert!(matches!(
            DenseUnitary::new(2, vec![Complex64::new(1.0, 0.0); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn householder_sends_zero_to_target() {
        let target = StateVector::new(
            2,
            vec![
                Complex64::new(0.0, 0.5),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-0.5, 0.5),
            ],
        )
        .unwrap();
        let u = DenseUnitary::householder_to(&target).unwrap();
        assert!(u.column(0).unwrap().max_deviation(&target) < 1e-15);
        assert_eq!(u.entry(2, 0), Complex64::new(0.0, 0.0));

        let zero = StateVector::basis(2, 0).unwrap();
        let u = DenseUnitary::householder_to(&zero).unwrap();
        assert_eq!(u, DenseUnitary::identity(4).unwrap());
    }

    #[test]
    fn adjoint_inverts() {
        let u = DenseUnitary::householder_to(&StateVector::uniform(3).unwrap()).unwrap();
        let s = StateVector::basis(3, 5).unwrap();
        let back = u.apply_adjoint(&u.apply(&s).unwrap()).unwrap();
        assert!(back.max_deviation(&s) < 1e-14);
        let via_adjoint = u.adjoint().apply(&s).unwrap();
        assert!(via_adjoint.max_deviation(&u.apply_adjoint(&s).unwrap()) < 1e-15);
    }

    #[test]
    fn json_round_trip_validates() {
        let u = DenseUnitary::hadamard(1).unwrap();
        let json = serde_json::to_string(&u).unwrap();
        let back: DenseUnitary = serde_json::from_str(&json).unwrap();
        assert_eq!(back, u);
        let bad = r#"{"dim":2,"entries":[[[1,0],[1,0]],[[0,0],[1,0]]]}"#;
        assert!(serde_json::from_str::<DenseUnitary>(bad).is_err());
    }
}
