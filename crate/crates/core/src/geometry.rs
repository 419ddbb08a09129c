//! The two-dimensional real picture of the iterate.
//!
//! Inside `V = span{U|0>, |x0>}` we use the frame `e1 = U|0>` and `e2`
//! chosen so that `e^{i xi}|x0> = a e1 + b e2` with `a, b` real and
//! `b >= 0`. In that frame both reflections are real 2x2 reflections, and
//! the iterate is a plane rotation. Positive angles turn `e1` toward the
//! `|x0>` direction, which sits at angle `beta = pi/2 - alpha` from `e1`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::engine::{IterateVariant, IterationTrace};
use crate::error::{Error, Result};
use crate::linalg::{inner_product, kernel, StateVector};

/// Inputs with `|<u0|x0>|` at least this close to 1 span no plane.
pub const PARALLEL_TOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct PlaneBasis {
    pub e1: StateVector,
    pub e2: StateVector,
    /// Phase applied to `|x0>`, in `(-pi, pi]`.
    pub xi: f64,
    pub a: f64,
    pub b: f64,
}

impl PlaneBasis {
    /// `a e1 + b e2` as amplitudes.
    pub fn marked_direction(&self) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = self.e1.amplitudes().iter().map(|x| x * self.a).collect();
        kernel::axpy(Complex64::new(self.b, 0.0), self.e2.amplitudes(), &mut v);
        v
    }
}

fn wrap_to_half_open_pi(mut angle: f64) -> f64 {
    // (-pi, pi]
    if angle <= -PI {
        angle += TAU;
    } else if angle > PI {
        angle -= TAU;
    }
    angle
}

pub fn build_plane_basis(u0: &StateVector, x0_state: &StateVector) -> Result<PlaneBasis> {
    let overlap = inner_product(u0, x0_state)?;
    let a = overlap.norm();
    if a >= 1.0 - PARALLEL_TOL {
        return Err(Error::DegeneratePlane);
    }
    let xi = if a > 0.0 { wrap_to_half_open_pi(-overlap.arg()) } else { 0.0 };
    let phase = Complex64::from_polar(1.0, xi);

    let mut v: Vec<Complex64> = x0_state.amplitudes().iter().map(|x| x * phase).collect();
    kernel::axpy(Complex64::new(-a, 0.0), u0.amplitudes(), &mut v);
    let b = kernel::norm_sqr(&v).sqrt();
    kernel::scale_in_place(Complex64::new(1.0 / b, 0.0), &mut v);
    Ok(PlaneBasis {
        e1: u0.clone(),
        e2: StateVector::new(u0.n_qubits(), v)?,
        xi,
        a,
        b,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationModel {
    /// `sin alpha = |<x0|U|0>|`.
    pub alpha: f64,
    /// Angle between `|x0>` and the start state; `alpha + beta = pi/2`.
    pub beta: f64,
}

impl RotationModel {
    pub fn from_overlap(overlap_abs: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&overlap_abs) {
            return Err(Error::InvalidParameter(format!(
                "overlap modulus {overlap_abs} outside [0, 1]"
            )));
        }
        Ok(Self::from_alpha(overlap_abs.asin()))
    }

    pub fn from_alpha(alpha: f64) -> Self {
        Self {
            alpha,
            beta: FRAC_PI_2 - alpha,
        }
    }

    /// Uniform start over `2^n` items: `sin alpha = 1/sqrt N`.
    pub fn uniform(n_qubits: usize) -> Self {
        let n_items = (1u64 << n_qubits) as f64;
        Self::from_alpha((1.0 / n_items.sqrt()).asin())
    }

    /// Angle of the `k`-th minus-sign iterate from the unmarked direction.
    pub fn alpha_n(&self, k: u64) -> f64 {
        (2 * k + 1) as f64 * self.alpha
    }

    /// Signed rotation applied by one step of `variant`.
    pub fn step_angle(&self, variant: IterateVariant) -> f64 {
        match variant {
            IterateVariant::MinusSign => 2.0 * self.alpha,
            // two unsigned-mirror rotations by 2 beta taken from the x0 mirror
            // to the start mirror, i.e. clockwise in this frame
            IterateVariant::Squared => -2.0 * (2.0 * self.beta),
        }
    }

    /// `|<x0|v>|^2` for a plane vector.
    pub fn success_probability(&self, v: Vec2) -> f64 {
        let c = v.c1 * self.alpha.sin() + v.c2 * self.alpha.cos();
        c * c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub c1: f64,
    pub c2: f64,
}

impl Vec2 {
    pub fn new(c1: f64, c2: f64) -> Self {
        Self { c1, c2 }
    }

    pub fn angle(&self) -> f64 {
        self.c2.atan2(self.c1)
    }

    pub fn rotated(&self, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self::new(c * self.c1 - s * self.c2, s * self.c1 + c * self.c2)
    }

    pub fn max_abs_diff(&self, other: &Vec2) -> f64 {
        (self.c1 - other.c1).abs().max((self.c2 - other.c2).abs())
    }
}

pub type Mat2 = [[f64; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn max_entry_diff(a: &Mat2, b: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[i][j]).abs());
        }
    }
    worst
}

pub fn rotation_matrix(phi: f64) -> Mat2 {
    let (s, c) = phi.sin_cos();
    [[c, -s], [s, c]]
}

/// Reflection in the line through the origin at angle `theta`.
pub fn reflection_in_line(theta: f64) -> Mat2 {
    let (s, c) = (2.0 * theta).sin_cos();
    [[c, s], [s, -c]]
}

/// `I_v = I - 2 v v^T`: reflection in the line perpendicular to unit `v`.
pub fn reflection_perpendicular_to(v: Vec2) -> Mat2 {
    [
        [1.0 - 2.0 * v.c1 * v.c1, -2.0 * v.c1 * v.c2],
        [-2.0 * v.c2 * v.c1, 1.0 - 2.0 * v.c2 * v.c2],
    ]
}

/// Reflection in the line at `theta1`, then in the line at `theta2`.
/// Equals `rotation_matrix(2 * (theta2 - theta1))`.
pub fn rotation_from_reflections(theta1: f64, theta2: f64) -> Mat2 {
    mat_mul(&reflection_in_line(theta2), &reflection_in_line(theta1))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneProjection {
    /// Real coordinates after removing `phase`.
    pub coords: Vec2,
    /// Common phase factored out of both coordinates, in `(-pi/2, pi/2]`.
    pub phase: f64,
    /// Norm of the component outside the plane.
    pub residual: f64,
    /// Largest imaginary part left after factoring `phase`.
    pub imag_residual: f64,
}

pub fn project_to_plane(state: &StateVector, basis: &PlaneBasis) -> Result<PlaneProjection> {
    let c1 = inner_product(&basis.e1, state)?;
    let c2 = inner_product(&basis.e2, state)?;

    let lead = if c1.norm() >= c2.norm() { c1 } else { c2 };
    let mut phase = if lead.norm() > 0.0 { lead.arg() } else { 0.0 };
    // Reduce mod pi so real coordinates keep their signs.
    if phase > FRAC_PI_2 {
        phase -= PI;
    } else if phase <= -FRAC_PI_2 {
        phase += PI;
    }
    let unphase = Complex64::from_polar(1.0, -phase);
    let (r1, r2) = (c1 * unphase, c2 * unphase);

    let mut rest = state.amplitudes().to_vec();
    kernel::axpy(-c1, basis.e1.amplitudes(), &mut rest);
    kernel::axpy(-c2, basis.e2.amplitudes(), &mut rest);

    Ok(PlaneProjection {
        coords: Vec2::new(r1.re, r2.re),
        phase,
        residual: kernel::norm_sqr(&rest).sqrt(),
        imag_residual: r1.im.abs().max(r2.im.abs()),
    })
}

pub fn model_step(v: Vec2, model: &RotationModel, variant: IterateVariant) -> Vec2 {
    v.rotated(model.step_angle(variant))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub max_prob_dev: f64,
    pub max_coord_dev: f64,
    pub max_residual: f64,
}

/// Replays the trace in the 2D model, one rotation per record, and reports
/// the worst disagreement. Records without plane data (degenerate plane)
/// contribute only to the probability comparison.
pub fn compare_trace(trace: &IterationTrace, model: &RotationModel) -> GeometryReport {
    let mut report = GeometryReport::default();
    let mut v = Vec2::new(1.0, 0.0);
    let mut expected_iter = 0;
    for rec in &trace.records {
        while expected_iter < rec.iter {
            v = model_step(v, model, trace.variant);
            expected_iter += 1;
        }
        let p = model.success_probability(v);
        report.max_prob_dev = report.max_prob_dev.max((rec.success_prob - p).abs());
        if let Some(plane) = &rec.plane {
            report.max_coord_dev = report.max_coord_dev.max(plane.coords.max_abs_diff(&v));
            report.max_residual = report.max_residual.max(plane.residual);
        }
    }
    report
}
