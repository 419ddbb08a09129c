//! The amplitude-amplification iterate, start-state preparation, stopping
//! rule and the instrumented runner.
//!
//! The minus-sign iterate is `Q = -U I_0 U^-1 I_x0 = -I_{U|0>} I_x0`. For
//! uniform and seeded-random preparations it is applied as an O(N)
//! reflection about `U|0>`; an explicit matrix is applied literally as
//! `U I_0 U^dagger`. The leading minus sign is a real amplitude negation.

mod random;
mod trace;

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_plane_basis, project_to_plane, PlaneBasis};
use crate::linalg::{
    conjugated_reflection, kernel, measure_sample, DenseUnitary, StateVector,
};
use crate::oracle::OracleSpec;

pub use random::{random_start_state, random_unitary};
pub use trace::{IterationRecord, IterationTrace, Measurement, CSV_HEADER};

/// Below this `|<x0|U|0>|` a run is flagged as the zero-angle failure.
pub const ZERO_OVERLAP_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub enum PreparationKind {
    /// `U = H`, so `U|0>` is the uniform superposition.
    Uniform,
    ExplicitUnitary(DenseUnitary),
    SeededRandom { seed: u64 },
}

/// The unitary `U` that defines the start state `U|0>`.
#[derive(Clone, Debug, PartialEq)]
pub struct Preparation {
    n: usize,
    kind: PreparationKind,
}

impl Preparation {
    pub fn uniform(n: usize) -> Result<Self> {
        crate::linalg::check_qubits(n)?;
        Ok(Self {
            n,
            kind: PreparationKind::Uniform,
        })
    }

    /// `u` was validated as unitary when it was built.
    pub fn explicit(u: DenseUnitary) -> Self {
        Self {
            n: u.dim().trailing_zeros() as usize,
            kind: PreparationKind::ExplicitUnitary(u),
        }
    }

    /// Seeded random preparation. Only the first column of the unitary is
    /// ever needed, so this is not bound by the dense-matrix limit.
    pub fn seeded_random(n: usize, seed: u64) -> Result<Self> {
        crate::linalg::check_qubits(n)?;
        Ok(Self {
            n,
            kind: PreparationKind::SeededRandom { seed },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &PreparationKind {
        &self.kind
    }

    /// The rotation angle, when it follows from `U` alone.
    ///
    /// That holds whenever every amplitude of `U|0>` has the same modulus,
    /// since then `|<x0|U|0>| = 1/sqrt N` for every possible `x0`. Uniform
    /// preparations always qualify; explicit ones are checked; seeded random
    /// ones never qualify.
    pub fn known_alpha(&self) -> Option<f64> {
        let flat_alpha = || ((1u64 << self.n) as f64).sqrt().recip().asin();
        match &self.kind {
            PreparationKind::Uniform => Some(flat_alpha()),
            PreparationKind::ExplicitUnitary(u) => {
                let expected = 1.0 / (u.dim() as f64);
                (0..u.dim())
                    .all(|x| (u.entry(x, 0).norm_sqr() - expected).abs() < crate::linalg::SCALAR_TOL)
                    .then(flat_alpha)
            }
            PreparationKind::SeededRandom { .. } => None,
        }
    }
}

/// `|psi_0> = U|0>`.
pub fn prepare_start(prep: &Preparation) -> Result<StateVector> {
    match &prep.kind {
        PreparationKind::Uniform => StateVector::uniform(prep.n),
        PreparationKind::ExplicitUnitary(u) => u.column(0),
        PreparationKind::SeededRandom { seed } => random_start_state(*seed, prep.n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IterateVariant {
    /// `-I_{U|0>} I_x0`, one query per step.
    #[serde(rename = "minus")]
    MinusSign,
    /// `(I_{U|0>} I_x0)^2`, no sign flip, two queries per step.
    #[serde(rename = "squared")]
    Squared,
}

impl IterateVariant {
    pub fn queries_per_step(self) -> u64 {
        match self {
            IterateVariant::MinusSign => 1,
            IterateVariant::Squared => 2,
        }
    }

    /// Number of minus-sign rotations one step amounts to.
    fn rotations_per_step(self) -> u64 {
        self.queries_per_step()
    }
}

impl std::str::FromStr for IterateVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" => Ok(Self::MinusSign),
            "squared" => Ok(Self::Squared),
            other => Err(Error::InvalidParameter(format!(
                "unknown variant {other:?} (expected minus or squared)"
            ))),
        }
    }
}

impl std::fmt::Display for IterateVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::MinusSign => "minus",
            Self::Squared => "squared",
        })
    }
}

enum StartMirror {
    /// Reflect about `U|0>` directly.
    State(StateVector),
    /// Apply `U I_0 U^dagger` with the explicit matrix.
    Conjugated { u: DenseUnitary, zero: StateVector },
}

/// A prepared iterate: holds whatever is needed to reflect about `U|0>`
/// so repeated steps do not rebuild it.
pub struct GroverIterate {
    n: usize,
    start: StateVector,
    mirror: StartMirror,
    variant: IterateVariant,
}

impl GroverIterate {
    pub fn new(prep: &Preparation, variant: IterateVariant) -> Result<Self> {
        let start = prepare_start(prep)?;
        let mirror = match &prep.kind {
            PreparationKind::ExplicitUnitary(u) => StartMirror::Conjugated {
                u: u.clone(),
                zero: StateVector::basis(prep.n, 0)?,
            },
            _ => StartMirror::State(start.clone()),
        };
        Ok(Self {
            n: prep.n,
            start,
            mirror,
            variant,
        })
    }

    pub fn start_state(&self) -> &StateVector {
        &self.start
    }

    pub fn variant(&self) -> IterateVariant {
        self.variant
    }

    fn reflect_start(&self, state: StateVector) -> Result<StateVector> {
        match &self.mirror {
            StartMirror::State(mirror) => {
                let mut amps = state.into_amplitudes();
                kernel::reflect_in_place(mirror.amplitudes(), &mut amps);
                StateVector::new(self.n, amps)
            }
            StartMirror::Conjugated { u, zero } => conjugated_reflection(u, zero, &state),
        }
    }

    pub fn step(&self, state: StateVector, oracle: &mut OracleSpec) -> Result<StateVector> {
        if state.n_qubits() != self.n || oracle.n() != self.n {
            return Err(Error::RegisterWidth {
                expected: self.n,
                found: if state.n_qubits() != self.n {
                    state.n_qubits()
                } else {
                    oracle.n()
                },
            });
        }
        match self.variant {
            IterateVariant::MinusSign => {
                let s = oracle.apply_ix0(state)?;
                Ok(self.reflect_start(s)?.negated())
            }
            IterateVariant::Squared => {
                let mut s = state;
                for _ in 0..2 {
                    s = oracle.apply_ix0(s)?;
                    s = self.reflect_start(s)?;
                }
                Ok(s)
            }
        }
    }
}

/// One application of the iterate. Builds the mirror on every call; use
/// [`GroverIterate`] for repeated steps.
pub fn grover_step(
    state: StateVector,
    oracle: &mut OracleSpec,
    prep: &Preparation,
    variant: IterateVariant,
) -> Result<StateVector> {
    GroverIterate::new(prep, variant)?.step(state, oracle)
}

/// `sin^2((2k + 1) alpha)`: success probability after `k` minus-sign
/// iterations.
pub fn predicted_success(k: u64, alpha: f64) -> f64 {
    ((2 * k + 1) as f64 * alpha).sin().powi(2)
}

/// Predicted success after `steps` steps of `variant`.
pub fn predicted_success_for(variant: IterateVariant, steps: u64, alpha: f64) -> f64 {
    predicted_success(steps * variant.rotations_per_step(), alpha)
}

/// Smallest-distance count `k >= 0` for `alpha + k * increment` to reach
/// `pi/2`; ties go to the smaller `k`.
fn nearest_count(alpha: f64, increment: f64) -> u64 {
    let target = FRAC_PI_2 - alpha;
    let center = (target / increment).max(0.0);
    let lo = center.floor();
    let hi = center.ceil();
    let dist = |k: f64| (alpha + k * increment - FRAC_PI_2).abs();
    if dist(lo) <= dist(hi) {
        lo as u64
    } else {
        hi as u64
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha == 0.0 {
        return Err(Error::ZeroAngle);
    }
    if !(alpha > 0.0 && alpha <= FRAC_PI_2) {
        return Err(Error::AngleOutOfRange(alpha));
    }
    Ok(())
}

/// Iteration count `k` making `(2k + 1) alpha` as close as possible to
/// `pi/2`.
pub fn optimal_iterations(alpha: f64) -> Result<u64> {
    check_alpha(alpha)?;
    Ok(nearest_count(alpha, 2.0 * alpha))
}

/// Like [`optimal_iterations`], counted in steps of `variant`.
pub fn optimal_steps(alpha: f64, variant: IterateVariant) -> Result<u64> {
    check_alpha(alpha)?;
    let increment = 2.0 * alpha * variant.rotations_per_step() as f64;
    Ok(nearest_count(alpha, increment))
}

/// Chance of finding the marked record after classically examining `k` of
/// `n_items` records. `k >= n_items` gives 1.
pub fn classical_baseline(n_items: u64, k: u64) -> f64 {
    k.min(n_items) as f64 / n_items as f64
}

/// `3 * ceil(sqrt N)`: the iteration budget used when the angle is unknown.
pub fn iteration_budget(n_qubits: usize) -> u64 {
    let n_items = 1u64 << n_qubits;
    3 * (n_items as f64).sqrt().ceil() as u64
}

/// Runs `max_iters` steps from `U|0>`, recording the marked-state overlap
/// and plane coordinates at every iteration, then samples one measurement.
///
/// The oracle is only touched through `apply_ix0` by the search itself.
/// The overlap, predicted probability and plane projection read `x0`
/// through the oracle's instrumentation accessors.
pub fn run(
    mut oracle: OracleSpec,
    prep: &Preparation,
    variant: IterateVariant,
    max_iters: u64,
    rng_seed: u64,
) -> Result<IterationTrace> {
    if oracle.n() != prep.n {
        return Err(Error::RegisterWidth {
            expected: prep.n,
            found: oracle.n(),
        });
    }
    let iterate = GroverIterate::new(prep, variant)?;
    let mut state = iterate.start_state().clone();

    let initial_overlap = oracle.marked_amplitude(&state)?.norm();
    let alpha = initial_overlap.min(1.0).asin();
    let zero_overlap = initial_overlap < ZERO_OVERLAP_TOL;
    let basis: Option<PlaneBasis> = match build_plane_basis(&state, &oracle.marked_state()) {
        Ok(b) => Some(b),
        Err(Error::DegeneratePlane) => None,
        Err(e) => return Err(e),
    };

    let base_queries = oracle.queries();
    let mut records = Vec::with_capacity(max_iters as usize + 1);
    for iter in 0..=max_iters {
        if iter > 0 {
            state = iterate.step(state, &mut oracle)?;
        }
        let overlap = oracle.marked_amplitude(&state)?;
        let plane = basis
            .as_ref()
            .map(|b| project_to_plane(&state, b))
            .transpose()?;
        records.push(IterationRecord {
            iter,
            overlap_with_x0: overlap,
            success_prob: overlap.norm_sqr(),
            predicted_prob: predicted_success_for(variant, iter, alpha),
            queries: oracle.queries() - base_queries,
            plane,
        });
    }

    let outcome = measure_sample(&state, rng_seed);
    Ok(IterationTrace {
        n: prep.n,
        variant,
        alpha,
        zero_overlap,
        degenerate_plane: basis.is_none(),
        records,
        measurement: Measurement {
            outcome,
            found: oracle.grade(outcome),
            seed: rng_seed,
        },
    })
}
