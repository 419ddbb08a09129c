//! Named invariant suites.
//!
//! Each suite measures the worst deviation of one property over a fixed,
//! seeded workload and compares it with its threshold. The `verify`
//! command runs all of them; tests run them individually.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use crate::engine::{
    iteration_budget, optimal_iterations, random_start_state, random_unitary, run, GroverIterate,
    IterateVariant, Preparation,
};
use crate::error::Result;
use crate::geometry::{
    build_plane_basis, compare_trace, max_entry_diff, reflection_perpendicular_to,
    rotation_from_reflections, rotation_matrix, RotationModel, Vec2,
};
use crate::linalg::{
    conjugated_reflection, inner_product, kernel, reflect_about_state, reflect_about_subspace,
    seeded_rng, DenseUnitary, StateVector,
};
use crate::oracle::OracleSpec;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Outcome {
    /// Pass when `measured < threshold`.
    fn below(measured: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self {
            passed: measured < threshold,
            measured,
            threshold,
            detail: detail.into(),
        }
    }

    /// Pass when `measured >= threshold`.
    fn at_least(measured: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self {
            passed: measured >= threshold,
            measured,
            threshold,
            detail: detail.into(),
        }
    }
}

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    check: fn() -> Result<Outcome>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub description: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

impl Suite {
    pub fn run(&self) -> SuiteReport {
        let start = Instant::now();
        let outcome = (self.check)().unwrap_or_else(|e| Outcome {
            passed: false,
            measured: f64::NAN,
            threshold: f64::NAN,
            detail: format!("error: {e}"),
        });
        SuiteReport {
            name: self.name,
            description: self.description,
            outcome,
            elapsed: start.elapsed(),
        }
    }
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite { name: "theorem1", description: "two reflections compose to a rotation by twice the mirror angle", check: theorem1 },
        Suite { name: "lemma1", description: "a reflection preserves the plane spanned by its mirror and any state", check: lemma1 },
        Suite { name: "lemma2", description: "U I_psi U^-1 = I_{U psi}", check: lemma2 },
        Suite { name: "lemma3", description: "-I_v = I_{v_perp} in two real dimensions", check: lemma3 },
        Suite { name: "involution", description: "reflections square to the identity", check: involution },
        Suite { name: "norm", description: "reflections and unitaries preserve the norm", check: norm_preservation },
        Suite { name: "linearity", description: "reflections are linear", check: linearity },
        Suite { name: "subspace", description: "subspace reflection: empty, single and full bases", check: subspace_reflection },
        Suite { name: "oracle", description: "kickback and controlled-phase constructions match U_f / I_x0", check: oracle_round_trips },
        Suite { name: "closed-form", description: "simulated success matches sin^2((2k+1) alpha), n in 2..=12", check: closed_form },
        Suite { name: "confinement", description: "iterates stay in span{U|0>, |x0>}", check: confinement },
        Suite { name: "realness", description: "plane coordinates are real up to one global phase", check: realness },
        Suite { name: "angle", description: "plane angle of iterate k is (2k+1) alpha", check: angle_additivity },
        Suite { name: "variant-relation", description: "minus-sign step equals I_{w_perp} I_x0 inside the plane", check: variant_relation },
        Suite { name: "squared", description: "squared step rotates by 4 beta = 2 pi - 4 alpha and reaches > 0.9", check: squared_geometry },
        Suite { name: "four-beta", description: "4 beta is within O(1/sqrt N) of 0 mod 2 pi", check: four_beta_bound },
        Suite { name: "geometry", description: "full simulation agrees with the 2D rotation model", check: geometry_cross_check },
        Suite { name: "failure-mode", description: "zero-overlap start never succeeds and is flagged", check: failure_mode },
        Suite { name: "monotone", description: "success strictly increases before the optimal iteration", check: monotone },
        Suite { name: "random-u", description: "random preparations reach > 0.5 within 3 ceil(sqrt N) in >= 90% of trials", check: random_efficacy },
        Suite { name: "queries", description: "a k-step run spends exactly k (or 2k) queries", check: query_accounting },
        Suite { name: "haar", description: "random unitaries have invariant first-row statistics", check: haar_statistics },
    ]
}

/// Runs every suite whose name equals `only`, or all of them.
pub fn run_suites(only: Option<&str>) -> Vec<SuiteReport> {
    suites()
        .iter()
        .filter(|s| only.is_none_or(|o| o == s.name))
        .map(Suite::run)
        .collect()
}

fn random_state(n: usize, seed: u64) -> Result<StateVector> {
    random_start_state(seed, n)
}

fn theorem1() -> Result<Outcome> {
    let mut rng = seeded_rng(0x7e01);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let t1 = rng.random_range(-PI..PI);
        let t2 = rng.random_range(-PI..PI);
        let composed = rotation_from_reflections(t1, t2);
        worst = worst.max(max_entry_diff(&composed, &rotation_matrix(2.0 * (t2 - t1))));
    }
    Ok(Outcome::below(worst, 1e-12, "1000 random mirror pairs"))
}

fn lemma1() -> Result<Outcome> {
    let mut rng = seeded_rng(0x1e01);
    let mut worst = 0.0f64;
    for t in 0..200u64 {
        let n = 1 + (t % 6) as usize;
        let psi = random_state(n, 2 * t)?;
        let chi = random_state(n, 2 * t + 1)?;
        // orthonormal frame of S = span{psi, chi}
        let mut f2 = chi.amplitudes().to_vec();
        kernel::axpy(-inner_product(&psi, &chi)?, psi.amplitudes(), &mut f2);
        let f2n = kernel::norm_sqr(&f2).sqrt();
        kernel::scale_in_place(Complex64::new(1.0 / f2n, 0.0), &mut f2);

        let (a, b) = (
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
        );
        let mut v: Vec<Complex64> = psi.amplitudes().iter().map(|x| a * x).collect();
        kernel::axpy(b, &f2, &mut v);
        let vn = kernel::norm_sqr(&v).sqrt();
        kernel::scale_in_place(Complex64::new(1.0 / vn, 0.0), &mut v);
        let v = StateVector::new(n, v)?;

        let r = reflect_about_state(&psi, &v)?;
        let mut rest = r.amplitudes().to_vec();
        kernel::axpy(-inner_product(&psi, &r)?, psi.amplitudes(), &mut rest);
        kernel::axpy(-kernel::inner(&f2, r.amplitudes()), &f2, &mut rest);
        worst = worst.max(kernel::norm_sqr(&rest).sqrt());
    }
    Ok(Outcome::below(worst, 1e-10, "200 random planes, n in 1..=6"))
}

fn lemma2() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for t in 0..1000u64 {
        let n = 1 + (t % 6) as usize;
        let u = random_unitary(10_000 + t, 1 << n)?;
        let psi = random_state(n, 20_000 + t)?;
        let chi = random_state(n, 30_000 + t)?;
        let lhs = conjugated_reflection(&u, &psi, &chi)?;
        let rhs = reflect_about_state(&u.apply(&psi)?, &chi)?;
        worst = worst.max(lhs.max_deviation(&rhs));
    }
    Ok(Outcome::below(worst, 1e-10, "1000 random (U, psi, chi), dim 2..=64"))
}

/// Worst entry of `|(-I_v) - I_{v_perp}|` over `trials` random unit `v`.
pub fn lemma3_deviation(trials: usize, seed: u64) -> f64 {
    let mut rng = seeded_rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let theta = rng.random_range(-PI..PI);
        let v = Vec2::new(theta.cos(), theta.sin());
        let perp = Vec2::new(-v.c2, v.c1);
        let mut minus = reflection_perpendicular_to(v);
        for row in &mut minus {
            for x in row {
                *x = -*x;
            }
        }
        worst = worst.max(max_entry_diff(&minus, &reflection_perpendicular_to(perp)));
    }
    worst
}

fn lemma3() -> Result<Outcome> {
    Ok(Outcome::below(lemma3_deviation(10_000, 0x1e03), 1e-14, "10000 random unit vectors"))
}

fn involution() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for t in 0..300u64 {
        let n = 1 + (t % 8) as usize;
        let psi = random_state(n, t)?;
        let chi = random_state(n, 1000 + t)?;
        let twice = reflect_about_state(&psi, &reflect_about_state(&psi, &chi)?)?;
        worst = worst.max(twice.max_deviation(&chi));
    }
    Ok(Outcome::below(worst, 1e-10, "300 random pairs, n in 1..=8"))
}

fn norm_preservation() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for t in 0..200u64 {
        let n = 1 + (t % 6) as usize;
        let psi = random_state(n, t)?;
        let chi = random_state(n, 500 + t)?;
        let u = random_unitary(900 + t, 1 << n)?;
        for s in [reflect_about_state(&psi, &chi)?, u.apply(&chi)?, conjugated_reflection(&u, &psi, &chi)?] {
            worst = worst.max((s.norm_sqr() - 1.0).abs());
        }
    }
    Ok(Outcome::below(worst, 1e-10, "200 random reflections and unitaries"))
}

fn linearity() -> Result<Outcome> {
    let mut rng = seeded_rng(0x11ea);
    let mut worst = 0.0f64;
    for t in 0..200u64 {
        let n = 1 + (t % 8) as usize;
        let mirror = random_state(n, t)?;
        let psi = random_state(n, 100 + t)?;
        let chi = random_state(n, 200 + t)?;
        let a = Complex64::new(rng.random::<f64>() * 4.0 - 2.0, rng.random::<f64>() * 4.0 - 2.0);
        let b = Complex64::new(rng.random::<f64>() * 4.0 - 2.0, rng.random::<f64>() * 4.0 - 2.0);

        let mut combo: Vec<Complex64> = psi.amplitudes().iter().map(|x| a * x).collect();
        kernel::axpy(b, chi.amplitudes(), &mut combo);
        kernel::reflect_in_place(mirror.amplitudes(), &mut combo);

        let rp = reflect_about_state(&mirror, &psi)?;
        let rc = reflect_about_state(&mirror, &chi)?;
        let mut parts: Vec<Complex64> = rp.amplitudes().iter().map(|x| a * x).collect();
        kernel::axpy(b, rc.amplitudes(), &mut parts);
        worst = worst.max(kernel::max_abs_diff(&combo, &parts));
    }
    Ok(Outcome::below(worst, 1e-10, "200 random combinations"))
}

fn subspace_reflection() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for n in 1..=4 {
        let target = random_state(n, n as u64)?;
        let empty = reflect_about_subspace(&[], &target)?;
        worst = worst.max(empty.max_deviation(&target));
        let psi = random_state(n, 50 + n as u64)?;
        let single = reflect_about_subspace(std::slice::from_ref(&psi), &target)?;
        worst = worst.max(single.max_deviation(&reflect_about_state(&psi, &target)?));
        let full: Vec<StateVector> = (0..1 << n).map(|x| StateVector::basis(n, x)).collect::<Result<_>>()?;
        let flipped = reflect_about_subspace(&full, &target)?;
        worst = worst.max(flipped.max_deviation(&target.negated()));
    }
    Ok(Outcome::below(worst, 1e-10, "n in 1..=4"))
}

/// `(exhaustive worst, random worst)` for both oracle constructions.
pub fn oracle_round_trip_deviations(exhaustive_max_n: usize, random_max_n: usize, states: u64) -> Result<(f64, f64)> {
    let mut exhaustive = 0.0f64;
    for n in 1..=exhaustive_max_n {
        for x0 in [0, (1 << n) - 1, (1 << n) / 3] {
            let mut o = OracleSpec::new(n, x0)?;
            for x in 0..1 << n {
                let s = StateVector::basis(n, x)?;
                let via = o.ix0_via_uf(&s)?;
                exhaustive = exhaustive.max(via.max_deviation(&o.apply_ix0(s)?));
            }
            for idx in 0..2 << n {
                let s = StateVector::basis(n + 1, idx)?;
                let via = o.uf_via_jx0(s.clone())?;
                exhaustive = exhaustive.max(via.max_deviation(&o.apply_uf(s)?));
            }
        }
    }
    let mut random = 0.0f64;
    for n in 1..=random_max_n {
        let mut o = OracleSpec::random(n, 77 + n as u64)?;
        for t in 0..states {
            let s = random_state(n, (n as u64) << 32 | t)?;
            let via = o.ix0_via_uf(&s)?;
            let direct = o.apply_ix0(s.clone())?;
            random = random.max(via.max_deviation(&direct));
            // applying I_x0 twice is the identity
            random = random.max(o.apply_ix0(direct)?.max_deviation(&s));

            let wide = random_state(n + 1, (n as u64) << 40 | t)?;
            let via = o.uf_via_jx0(wide.clone())?;
            let direct = o.apply_uf(wide.clone())?;
            random = random.max(via.max_deviation(&direct));
            random = random.max(o.apply_uf(direct)?.max_deviation(&wide));
        }
    }
    Ok((exhaustive, random))
}

fn oracle_round_trips() -> Result<Outcome> {
    let (exhaustive, random) = oracle_round_trip_deviations(6, 16, 100)?;
    let mut out = Outcome::below(random, 1e-10, format!("exhaustive n<=6 worst {exhaustive:e}; 100 random states per n<=16"));
    out.passed &= exhaustive < 1e-12;
    Ok(out)
}

pub type StepFn<'a> = &'a dyn Fn(&GroverIterate, StateVector, &mut OracleSpec) -> Result<StateVector>;

/// Worst `|p_k - sin^2((2k+1) alpha)|` over `n in ns`, `k <= 3 ceil(sqrt N)`,
/// uniform preparation, with `step` as the iterate.
pub fn closed_form_deviation(ns: std::ops::RangeInclusive<usize>, step: StepFn<'_>) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in ns {
        let prep = Preparation::uniform(n)?;
        let iterate = GroverIterate::new(&prep, IterateVariant::MinusSign)?;
        let alpha = RotationModel::uniform(n).alpha;
        let mut oracle = OracleSpec::new(n, (1 << n) * 2 / 3)?;
        let mut state = iterate.start_state().clone();
        for k in 0..=iteration_budget(n) {
            if k > 0 {
                state = step(&iterate, state, &mut oracle)?;
            }
            let p = oracle.marked_amplitude(&state)?.norm_sqr();
            let predicted = ((2 * k + 1) as f64 * alpha).sin().powi(2);
            worst = worst.max((p - predicted).abs());
        }
    }
    Ok(worst)
}

fn closed_form() -> Result<Outcome> {
    let worst = closed_form_deviation(2..=12, &|it, s, o| it.step(s, o))?;
    Ok(Outcome::below(worst, 1e-9, "n in 2..=12, k <= 3 ceil(sqrt N)"))
}

fn preparations_at(n: usize, seeds: std::ops::Range<u64>) -> Result<Vec<Preparation>> {
    let mut preps = vec![Preparation::uniform(n)?];
    for seed in seeds {
        preps.push(Preparation::seeded_random(n, seed)?);
    }
    Ok(preps)
}

fn confinement() -> Result<Outcome> {
    let n = 8;
    let mut worst = 0.0f64;
    for (i, prep) in preparations_at(n, 0..10)?.iter().enumerate() {
        for variant in [IterateVariant::MinusSign, IterateVariant::Squared] {
            let oracle = OracleSpec::random(n, 500 + i as u64)?;
            let trace = run(oracle, prep, variant, iteration_budget(n), 0)?;
            for r in &trace.records {
                worst = worst.max(r.plane.map_or(f64::INFINITY, |p| p.residual));
            }
        }
    }
    Ok(Outcome::below(worst, 1e-9, "n = 8, uniform + 10 random preparations, both variants"))
}

fn realness() -> Result<Outcome> {
    let n = 8;
    let mut worst = 0.0f64;
    for (i, prep) in preparations_at(n, 100..110)?.iter().enumerate() {
        let oracle = OracleSpec::random(n, 900 + i as u64)?;
        let trace = run(oracle, prep, IterateVariant::MinusSign, iteration_budget(n), 0)?;
        for r in &trace.records {
            worst = worst.max(r.plane.map_or(f64::INFINITY, |p| p.imag_residual));
        }
    }
    Ok(Outcome::below(worst, 1e-9, "n = 8, uniform + 10 random preparations"))
}

fn angle_additivity() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for n in 2..=10 {
        let model = RotationModel::uniform(n);
        let trace = run(OracleSpec::random(n, n as u64)?, &Preparation::uniform(n)?, IterateVariant::MinusSign, iteration_budget(n), 0)?;
        for r in &trace.records {
            let plane = r.plane.expect("uniform start is never parallel to a basis state for n >= 1");
            // angle from the unmarked direction = angle from e1 + alpha
            let measured = plane.coords.angle() + model.alpha;
            let diff = (measured - model.alpha_n(r.iter) + PI).rem_euclid(TAU) - PI;
            worst = worst.max(diff.abs());
        }
    }
    Ok(Outcome::below(worst, 1e-9, "n in 2..=10, k <= 3 ceil(sqrt N)"))
}

fn variant_relation() -> Result<Outcome> {
    let mut rng = seeded_rng(0x1e33);
    let mut worst = 0.0f64;
    for t in 0..100u64 {
        let n = 2 + (t % 7) as usize;
        let prep = if t % 2 == 0 { Preparation::uniform(n)? } else { Preparation::seeded_random(n, t)? };
        let iterate = GroverIterate::new(&prep, IterateVariant::MinusSign)?;
        let mut oracle = OracleSpec::random(n, 3 * t)?;
        let basis = build_plane_basis(iterate.start_state(), &oracle.marked_state())?;

        // random state inside the plane
        let (a, b) = (
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
        );
        let mut v: Vec<Complex64> = basis.e1.amplitudes().iter().map(|x| a * x).collect();
        kernel::axpy(b, basis.e2.amplitudes(), &mut v);
        let vn = kernel::norm_sqr(&v).sqrt();
        kernel::scale_in_place(Complex64::new(1.0 / vn, 0.0), &mut v);
        let v = StateVector::new(n, v)?;

        let stepped = iterate.step(v.clone(), &mut oracle)?;
        // e2 is the unit vector in the plane orthogonal to U|0>
        let flipped = oracle.apply_ix0(v)?;
        let via_perp = reflect_about_state(&basis.e2, &flipped)?;
        worst = worst.max(stepped.max_deviation(&via_perp));
    }
    Ok(Outcome::below(worst, 1e-10, "100 random in-plane states"))
}

/// Per-step squared-variant rotation, measured clockwise (mirror order) so
/// it reads as `4 beta mod 2 pi`. Returns `(worst angle error, worst
/// shortfall below 0.9 success)` over `ns`.
pub fn squared_geometry_deviation(ns: std::ops::RangeInclusive<usize>) -> Result<(f64, f64)> {
    let mut angle_err = 0.0f64;
    let mut shortfall = f64::NEG_INFINITY;
    for n in ns {
        let model = RotationModel::uniform(n);
        let expected = TAU - 4.0 * model.alpha;
        let budget = iteration_budget(n);
        let trace = run(OracleSpec::random(n, 40 + n as u64)?, &Preparation::uniform(n)?, IterateVariant::Squared, budget, 0)?;
        for pair in trace.records.windows(2) {
            let (p0, p1) = (pair[0].plane.expect("plane"), pair[1].plane.expect("plane"));
            let ccw = p1.coords.angle() - p0.coords.angle();
            let clockwise = (-ccw).rem_euclid(TAU);
            let diff = (clockwise - expected + PI).rem_euclid(TAU) - PI;
            angle_err = angle_err.max(diff.abs());
        }
        let best = trace.best().success_prob;
        shortfall = shortfall.max(0.9 - best);
    }
    Ok((angle_err, shortfall))
}

fn squared_geometry() -> Result<Outcome> {
    let (angle_err, shortfall) = squared_geometry_deviation(4..=10)?;
    let mut out = Outcome::below(angle_err, 1e-9, format!("n in 4..=10; best success shortfall below 0.9: {shortfall:.3e}"));
    out.passed &= shortfall < 0.0;
    Ok(out)
}

fn four_beta_bound() -> Result<Outcome> {
    // Distance of 4 beta from 0 mod 2 pi is 4 alpha, and
    // 1/sqrt N <= alpha <= 1/sqrt(N - 1).
    let mut worst = 0.0f64;
    for n in 4..=24 {
        let n_items = (1u64 << n) as f64;
        let model = RotationModel::uniform(n);
        let reduced = (4.0 * model.beta).rem_euclid(TAU);
        worst = worst.max((reduced - (TAU - 4.0 * model.alpha)).abs());
        let dist = reduced.min(TAU - reduced);
        let lower = 4.0 / n_items.sqrt();
        let upper = 4.0 / (n_items - 1.0).sqrt();
        if dist < lower - 1e-12 || dist > upper + 1e-12 {
            worst = f64::INFINITY;
        }
    }
    Ok(Outcome::below(worst, 1e-12, "n in 4..=24"))
}

fn geometry_cross_check() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let cases: [(usize, IterateVariant, u64); 4] = [
        (2, IterateVariant::MinusSign, 1),
        (6, IterateVariant::MinusSign, 10),
        (6, IterateVariant::Squared, iteration_budget(6)),
        (10, IterateVariant::MinusSign, 40),
    ];
    for (n, variant, iters) in cases {
        let trace = run(OracleSpec::random(n, n as u64)?, &Preparation::uniform(n)?, variant, iters, 0)?;
        let report = compare_trace(&trace, &RotationModel::from_alpha(trace.alpha));
        worst = worst.max(report.max_prob_dev).max(report.max_coord_dev).max(report.max_residual);
    }
    for seed in 0..5 {
        let n = 7;
        let trace = run(OracleSpec::random(n, seed)?, &Preparation::seeded_random(n, seed)?, IterateVariant::MinusSign, iteration_budget(n), 0)?;
        let report = compare_trace(&trace, &RotationModel::from_alpha(trace.alpha));
        worst = worst.max(report.max_prob_dev).max(report.max_coord_dev).max(report.max_residual);
    }
    Ok(Outcome::below(worst, 1e-9, "uniform n = 2, 6, 10 and 5 random preparations at n = 7"))
}

/// `U` with `U|0>` uniform over every basis state except `x0`, so
/// `<x0|U|0> = 0` exactly.
pub fn zero_overlap_preparation(n: usize, x0: usize) -> Result<Preparation> {
    let dim = 1usize << n;
    let amp = 1.0 / ((dim - 1) as f64).sqrt();
    let target = StateVector::new(
        n,
        (0..dim).map(|x| Complex64::new(if x == x0 { 0.0 } else { amp }, 0.0)).collect(),
    )?;
    Ok(Preparation::explicit(DenseUnitary::householder_to(&target)?))
}

fn failure_mode() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut flagged = true;
    for (n, x0) in [(3, 5), (6, 0), (8, 200)] {
        let prep = zero_overlap_preparation(n, x0)?;
        let trace = run(OracleSpec::new(n, x0)?, &prep, IterateVariant::MinusSign, 100, 0)?;
        flagged &= trace.zero_overlap;
        for r in &trace.records {
            worst = worst.max(r.success_prob);
        }
    }
    let mut out = Outcome::below(worst, 1e-12, format!("100 iterations; flagged in every trace: {flagged}"));
    out.passed &= flagged;
    Ok(out)
}

fn monotone() -> Result<Outcome> {
    // Smallest step up before the optimum; must be positive.
    let mut smallest = f64::INFINITY;
    for n in 2..=12 {
        let alpha = RotationModel::uniform(n).alpha;
        let k_opt = optimal_iterations(alpha)?;
        let trace = run(OracleSpec::random(n, n as u64)?, &Preparation::uniform(n)?, IterateVariant::MinusSign, k_opt, 0)?;
        for pair in trace.records.windows(2) {
            smallest = smallest.min(pair[1].success_prob - pair[0].success_prob);
        }
    }
    Ok(Outcome {
        passed: smallest > 0.0,
        measured: smallest,
        threshold: 0.0,
        detail: "n in 2..=12, k < optimal".into(),
    })
}

/// Fraction of `trials` seeded random preparations at `n` whose best success
/// within `3 ceil(sqrt N)` iterations exceeds 0.5.
pub fn random_efficacy_rate(n: usize, trials: u64, seed: u64) -> Result<f64> {
    let mut wins = 0u64;
    for t in 0..trials {
        let prep = Preparation::seeded_random(n, seed + t)?;
        let oracle = OracleSpec::random(n, seed ^ (0x5eed << 16) ^ t)?;
        let trace = run(oracle, &prep, IterateVariant::MinusSign, iteration_budget(n), t)?;
        if trace.best().success_prob > 0.5 {
            wins += 1;
        }
    }
    Ok(wins as f64 / trials as f64)
}

fn random_efficacy() -> Result<Outcome> {
    let rate = random_efficacy_rate(8, 100, 0xabc)?;
    Ok(Outcome::at_least(rate, 0.9, "100 random preparations at n = 8"))
}

fn query_accounting() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for (k, variant) in [(0, IterateVariant::MinusSign), (7, IterateVariant::MinusSign), (13, IterateVariant::Squared)] {
        let trace = run(OracleSpec::new(5, 3)?, &Preparation::uniform(5)?, variant, k, 0)?;
        let expected = k * variant.queries_per_step();
        worst = worst.max((trace.last().queries as f64 - expected as f64).abs());
    }
    Ok(Outcome::below(worst, 0.5, "k = 0, 7 (minus) and 13 (squared)"))
}

fn haar_statistics() -> Result<Outcome> {
    let dim = 16;
    let trials = 500u64;
    let mean = (0..trials)
        .map(|s| random_unitary(70_000 + s, dim).map(|u| u.entry(0, 3).norm_sqr()))
        .sum::<Result<f64>>()?
        / trials as f64;
    let d = dim as f64;
    let se = ((d - 1.0) / (d * d * (d + 1.0))).sqrt() / (trials as f64).sqrt();
    Ok(Outcome::below((mean - 1.0 / d).abs() / se, 3.0, "standard errors from 1/16, 500 seeds"))
}
