//! The black-box query model.
//!
//! [`OracleSpec`] hides the marked string `x0`. Searches interact with it only
//! through the `apply_*` operations, each of which is charged as one query.
//! The accessors that read `x0` directly ([`OracleSpec::grade`] and the
//! instrumentation methods) are for scoring and reporting, never for the
//! search itself.
//!
//! Registers: the input register is qubits `0..n`; for `U_f` and `J_x0` the
//! output (control) qubit is qubit `n`, the highest index. So basis state
//! `|x>|y>` lives at index `x + y * 2^n`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_qubits, seeded_rng, Amplitude, StateVector, MAX_QUBITS, OPERATOR_TOL};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OracleRepr", into = "OracleRepr")]
pub struct OracleSpec {
    n: usize,
    x0: usize,
    queries: u64,
}

/// `{"n": n, "x0_hex": "<lowercase hex>"}`. Query counts are not persisted.
#[derive(Serialize, Deserialize)]
struct OracleRepr {
    n: usize,
    x0_hex: String,
}

impl TryFrom<OracleRepr> for OracleSpec {
    type Error = Error;

    fn try_from(r: OracleRepr) -> Result<Self> {
        let x0 = parse_hex(&r.x0_hex)?;
        OracleSpec::new(r.n, x0)
    }
}

impl From<OracleSpec> for OracleRepr {
    fn from(o: OracleSpec) -> Self {
        OracleRepr {
            n: o.n,
            x0_hex: format!("{:x}", o.x0),
        }
    }
}

fn parse_hex(s: &str) -> Result<usize> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    usize::from_str_radix(digits, 16)
        .map_err(|e| Error::InvalidParameter(format!("bad hex string {s:?}: {e}")))
}

/// Parses a marked string for an `n`-qubit register.
///
/// `0x`-prefixed input is hexadecimal. Otherwise the input must be exactly
/// `n` characters of `0`/`1`, read as an ordinary binary numeral (most
/// significant bit first) giving the basis index.
pub fn parse_marked(s: &str, n: usize) -> Result<usize> {
    let dim = check_qubits(n)?;
    let x0 = if s.starts_with("0x") || s.starts_with("0X") {
        parse_hex(s)?
    } else {
        if s.len() != n || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidParameter(format!(
                "marked string {s:?} is not a {n}-bit binary string (use 0x.. for hex)"
            )));
        }
        usize::from_str_radix(s, 2).expect("validated binary digits")
    };
    if x0 >= dim {
        return Err(Error::IndexOutOfRange { index: x0, dim });
    }
    Ok(x0)
}

impl OracleSpec {
    pub fn new(n: usize, x0: usize) -> Result<Self> {
        // The U_f register needs n + 1 qubits.
        if n >= MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let dim = check_qubits(n)?;
        if x0 >= dim {
            return Err(Error::IndexOutOfRange { index: x0, dim });
        }
        Ok(Self { n, x0, queries: 0 })
    }

    /// Marked string drawn uniformly from `seed`.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        let dim = check_qubits(n)?;
        let x0 = seeded_rng(seed).random_range(0..dim);
        Self::new(n, x0)
    }

    /// Input register width.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// Scores a guess. This is the only place the search outcome is compared
    /// against the hidden string.
    pub fn grade(&self, guess: usize) -> bool {
        guess == self.x0
    }

    /// Instrumentation: `<x0|state>`, not charged as a query.
    pub fn marked_amplitude(&self, state: &StateVector) -> Result<Amplitude> {
        self.check_width(state, self.n)?;
        Ok(state.amplitudes()[self.x0])
    }

    /// Instrumentation: the state `|x0>`, for building analytic models.
    pub fn marked_state(&self) -> StateVector {
        StateVector::basis(self.n, self.x0).expect("x0 validated at construction")
    }

    fn check_width(&self, state: &StateVector, expected: usize) -> Result<()> {
        if state.n_qubits() != expected {
            return Err(Error::RegisterWidth {
                expected,
                found: state.n_qubits(),
            });
        }
        Ok(())
    }

    /// `U_f |x>|y> = |x>|y xor f(x)>`: swaps the amplitudes at `(x0, 0)`
    /// and `(x0, 1)`.
    pub fn apply_uf(&mut self, mut state: StateVector) -> Result<StateVector> {
        self.check_width(&state, self.n + 1)?;
        let half = 1usize << self.n;
        state.amps_mut().swap(self.x0, self.x0 + half);
        self.queries += 1;
        Ok(state)
    }

    /// `I_x0`: negates the amplitude of `|x0>`.
    pub fn apply_ix0(&mut self, mut state: StateVector) -> Result<StateVector> {
        self.check_width(&state, self.n)?;
        let a = &mut state.amps_mut()[self.x0];
        *a = -*a;
        self.queries += 1;
        Ok(state)
    }

    /// `I_x0` realized by one `U_f` call with the output register prepared
    /// in `(|0> - |1>)/sqrt 2`.
    pub fn ix0_via_uf(&mut self, state: &StateVector) -> Result<StateVector> {
        self.check_width(state, self.n)?;
        let half = 1usize << self.n;
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let mut extended = Vec::with_capacity(2 * half);
        extended.extend(state.amplitudes().iter().map(|a| a * s));
        extended.extend(state.amplitudes().iter().map(|a| -a * s));
        let out = self.apply_uf(StateVector::new(self.n + 1, extended)?)?;

        // Output must still factor as |phi>(|0> - |1>)/sqrt 2.
        let (y0, y1) = out.amplitudes().split_at(half);
        let deviation = y0
            .iter()
            .zip(y1)
            .map(|(a, b)| (a + b).norm())
            .fold(0.0, f64::max);
        if deviation > OPERATOR_TOL {
            return Err(Error::OutputRegisterChanged { deviation });
        }
        let input = y0.iter().zip(y1).map(|(a, b)| (a - b) * s).collect();
        StateVector::new(self.n, input)
    }

    /// `J_x0`: `I_x0` on the input register, controlled by the output qubit.
    pub fn apply_jx0(&mut self, mut state: StateVector) -> Result<StateVector> {
        self.check_width(&state, self.n + 1)?;
        let half = 1usize << self.n;
        let a = &mut state.amps_mut()[self.x0 + half];
        *a = -*a;
        self.queries += 1;
        Ok(state)
    }

    /// `U_f` rebuilt as `H_out J_x0 H_out`.
    pub fn uf_via_jx0(&mut self, state: StateVector) -> Result<StateVector> {
        self.check_width(&state, self.n + 1)?;
        let half = 1usize << self.n;
        let state = hadamard_on_top_qubit(state, half)?;
        let state = self.apply_jx0(state)?;
        hadamard_on_top_qubit(state, half)
    }
}

fn hadamard_on_top_qubit(state: StateVector, half: usize) -> Result<StateVector> {
    let n_qubits = state.n_qubits();
    let mut amps = state.into_amplitudes();
    let (lo, hi) = amps.split_at_mut(half);
    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
        let (p, q) = (*a, *b);
        *a = (p + q) * FRAC_1_SQRT_2;
        *b = (p - q) * FRAC_1_SQRT_2;
    }
    StateVector::new(n_qubits, amps)
}
