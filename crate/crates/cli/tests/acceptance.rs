//! Acceptance checks. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{ensure, Result};
use grover_cli::sweep::{self, SweepParams, SweepPrep};
use grover_core::engine::{
    self, iteration_budget, random_unitary, GroverIterate, IterateVariant, Preparation,
};
use grover_core::geometry::{reflection_perpendicular_to, rotation_from_reflections, Mat2, Vec2};
use grover_core::linalg::{
    inner_product, measure_sample, reflect_about_state, seeded_rng, Amplitude, StateVector,
};
use grover_core::oracle::OracleSpec;
use grover_core::verify;
use rand::Rng;

struct Verdict {
    passed: bool,
    detail: String,
}

type Check = fn() -> Result<Verdict>;

fn verdict(passed: bool, detail: String) -> Result<Verdict> {
    Ok(Verdict { passed, detail })
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

fn n_items(n: usize) -> f64 {
    (1u64 << n) as f64
}

fn exact_small_case() -> Result<Verdict> {
    let mut worst = 0.0f64;
    let mut all_found = true;
    let mut slowest = Duration::ZERO;
    for x0 in 0..4 {
        let prep = Preparation::uniform(2)?;
        let start = Instant::now();
        let trace = engine::run(OracleSpec::new(2, x0)?, &prep, IterateVariant::MinusSign, 1, 0)?;
        slowest = slowest.max(start.elapsed());
        worst = worst.max((trace.last().success_prob - 1.0).abs());
        all_found &= trace.measurement.found;

        // resample the final state under many seeds
        let oracle = OracleSpec::new(2, x0)?;
        let mut o = oracle.clone();
        let it = GroverIterate::new(&prep, IterateVariant::MinusSign)?;
        let fin = it.step(it.start_state().clone(), &mut o)?;
        for seed in 0..1000 {
            all_found &= oracle.grade(measure_sample(&fin, seed));
        }
    }
    verdict(
        worst < 1e-12 && all_found && within(slowest, Duration::from_millis(1)),
        format!("|p - 1| = {worst:.1e}, all 4000 samples hit x0: {all_found}, slowest run {slowest:?}"),
    )
}

fn closed_form() -> Result<Verdict> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 2..=12 {
        let alpha = (1.0 / n_items(n).sqrt()).asin();
        let budget = 3 * (n_items(n).sqrt().ceil() as u64);
        let oracle = OracleSpec::new(n, (1 << n) - 2)?;
        let trace = engine::run(oracle, &Preparation::uniform(n)?, IterateVariant::MinusSign, budget, 0)?;
        ensure!(trace.records.len() as u64 == budget + 1, "trace length");
        for r in &trace.records {
            let expected = ((2 * r.iter + 1) as f64 * alpha).sin().powi(2);
            worst = worst.max((r.success_prob - expected).abs());
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-9 && within(elapsed, Duration::from_secs(10)),
        format!("worst deviation {worst:.2e}, {elapsed:?}"),
    )
}

fn theorem1() -> Result<Verdict> {
    let start = Instant::now();
    let mut rng = seeded_rng(20_261_016);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let t1: f64 = rng.random_range(-PI..PI);
        let t2: f64 = rng.random_range(-PI..PI);
        let phi = 2.0 * (t2 - t1);
        let expected: Mat2 = [[phi.cos(), -phi.sin()], [phi.sin(), phi.cos()]];
        let got = rotation_from_reflections(t1, t2);
        for (r, e) in got.iter().zip(&expected) {
            for (a, b) in r.iter().zip(e) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-12 && within(elapsed, Duration::from_secs(1)),
        format!("worst entry deviation {worst:.2e} over 1000 pairs, {elapsed:?}"),
    )
}

fn lemma2() -> Result<Verdict> {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for t in 0..1000u64 {
        let n = 1 + (t % 6) as usize;
        let u = random_unitary(t, 1 << n)?;
        let psi = engine::random_start_state(1_000_000 + t, n)?;
        let chi = engine::random_start_state(2_000_000 + t, n)?;
        let lhs = u.apply(&reflect_about_state(&psi, &u.apply_adjoint(&chi)?)?)?;
        let rhs = reflect_about_state(&u.apply(&psi)?, &chi)?;
        worst = worst.max(lhs.max_deviation(&rhs));
    }
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-10 && within(elapsed, Duration::from_secs(5)),
        format!("worst deviation {worst:.2e}, dim 2..=64, {elapsed:?}"),
    )
}

fn lemma3() -> Result<Verdict> {
    let start = Instant::now();
    let mut rng = seeded_rng(33);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let theta: f64 = rng.random_range(-PI..PI);
        let v = Vec2::new(theta.cos(), theta.sin());
        let perp = Vec2::new(-theta.sin(), theta.cos());
        let minus_iv = reflection_perpendicular_to(v).map(|row| row.map(|x| -x));
        let iperp = reflection_perpendicular_to(perp);
        // I - 2 p p^T written out
        let direct: Mat2 = [
            [1.0 - 2.0 * perp.c1 * perp.c1, -2.0 * perp.c1 * perp.c2],
            [-2.0 * perp.c2 * perp.c1, 1.0 - 2.0 * perp.c2 * perp.c2],
        ];
        for i in 0..2 {
            for j in 0..2 {
                worst = worst
                    .max((minus_iv[i][j] - iperp[i][j]).abs())
                    .max((iperp[i][j] - direct[i][j]).abs());
            }
        }
    }
    worst = worst.max(verify::lemma3_deviation(1000, 34));
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-14 && within(elapsed, Duration::from_secs(1)),
        format!("worst entry deviation {worst:.2e}, {elapsed:?}"),
    )
}

fn oracle_round_trips() -> Result<Verdict> {
    let start = Instant::now();
    let (exhaustive, random) = verify::oracle_round_trip_deviations(6, 16, 100)?;
    let elapsed = start.elapsed();
    verdict(
        exhaustive < 1e-12 && random < 1e-10 && within(elapsed, Duration::from_secs(10)),
        format!("exhaustive n <= 6: {exhaustive:.2e}; random n <= 16: {random:.2e}; {elapsed:?}"),
    )
}

/// Out-of-plane norm after removing components along `u0` and along `x0`
/// orthogonalized against `u0`.
fn residual(state: &StateVector, u0: &StateVector, x0: usize) -> Result<f64> {
    let amps = u0.amplitudes();
    let a = amps[x0];
    let mut e2: Vec<Amplitude> = amps.iter().map(|v| -a.conj() * v).collect();
    e2[x0] += 1.0;
    let norm = e2.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    e2.iter_mut().for_each(|z| *z /= norm);
    let e2 = StateVector::new(u0.n_qubits(), e2)?;
    let c1 = inner_product(u0, state)?;
    let c2 = inner_product(&e2, state)?;
    let rest: f64 = (0..state.dim())
        .map(|i| (state.amplitudes()[i] - c1 * amps[i] - c2 * e2.amplitudes()[i]).norm_sqr())
        .sum();
    Ok(rest.sqrt())
}

fn confinement() -> Result<Verdict> {
    let start = Instant::now();
    let n = 8;
    let mut preps = vec![Preparation::uniform(n)?];
    for seed in 0..5 {
        preps.push(Preparation::seeded_random(n, 900 + seed)?);
    }
    let mut worst = 0.0f64;
    for (i, prep) in preps.iter().enumerate() {
        let mut oracle = OracleSpec::random(n, i as u64)?;
        let x0 = (0..1 << n).find(|&x| oracle.grade(x)).expect("one marked item");
        let it = GroverIterate::new(prep, IterateVariant::MinusSign)?;
        let u0 = it.start_state().clone();
        let mut state = u0.clone();
        for _ in 0..=iteration_budget(n) {
            worst = worst.max(residual(&state, &u0, x0)?);
            state = it.step(state, &mut oracle)?;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-9 && within(elapsed, Duration::from_secs(5)),
        format!("worst residual {worst:.2e}, uniform + 5 random preparations, {elapsed:?}"),
    )
}

fn query_scaling() -> Result<Verdict> {
    let start = Instant::now();
    let rows = sweep::sweep(&SweepParams {
        n_min: 2,
        n_max: 12,
        trials: 1,
        seed: 8,
        variant: IterateVariant::MinusSign,
        prep: SweepPrep::Uniform,
        max_qubits: 12,
    })?;
    let elapsed = start.elapsed();
    // nearest k to pi/(4 alpha) - 1/2, worked out independently
    let expected = [1u64, 2, 3, 4, 6, 8, 12, 17, 25, 35, 50];
    let queries: Vec<u64> = rows.iter().map(|r| r.queries).collect();
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n_items as f64).ln(), (r.queries as f64).ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let last = rows.last().expect("rows");
    verdict(
        (slope - 0.5).abs() <= 0.05
            && queries == expected
            && rows.iter().all(|r| r.found)
            && within(elapsed, Duration::from_secs(30)),
        format!(
            "slope {slope:.3}; at N = {} quantum success {:.4} vs classical {:.4} for {} queries; {elapsed:?}",
            last.n_items, last.final_success_prob, last.classical_prob, last.queries
        ),
    )
}

fn squared_geometry() -> Result<Verdict> {
    let (angle_err, shortfall) = verify::squared_geometry_deviation(4..=10)?;
    // independent check of the cost per step and of the reached success
    let mut best_min = 1.0f64;
    for n in 4..=10 {
        let budget = iteration_budget(n);
        let trace = engine::run(OracleSpec::random(n, 7 * n as u64)?, &Preparation::uniform(n)?, IterateVariant::Squared, budget, 0)?;
        ensure!(trace.last().queries == 2 * budget, "squared step must cost 2 queries");
        best_min = best_min.min(trace.best().success_prob);
    }
    let alpha4 = (1.0 / n_items(4).sqrt()).asin();
    verdict(
        angle_err < 1e-9 && shortfall < 0.0 && best_min > 0.9,
        format!(
            "angle error {angle_err:.2e} (N = 16: 2 pi - 4 alpha = {:.6}); lowest best success {best_min:.4}",
            TAU - 4.0 * alpha4
        ),
    )
}

fn failure_mode() -> Result<Verdict> {
    let start = Instant::now();
    let (n, x0) = (6, 41);
    let prep = verify::zero_overlap_preparation(n, x0)?;
    let u0 = engine::prepare_start(&prep)?;
    ensure!(u0.amplitudes()[x0] == Amplitude::new(0.0, 0.0), "overlap must vanish exactly");
    let trace = engine::run(OracleSpec::new(n, x0)?, &prep, IterateVariant::MinusSign, 100, 0)?;
    let worst = trace.records.iter().map(|r| r.success_prob).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-12
            && trace.zero_overlap
            && trace.records.len() == 101
            && within(elapsed, Duration::from_secs(1)),
        format!("max success {worst:.1e} over 100 iterations, flagged: {}, {elapsed:?}", trace.zero_overlap),
    )
}

fn random_efficacy() -> Result<Verdict> {
    let start = Instant::now();
    let rate = verify::random_efficacy_rate(8, 100, 11)?;
    let elapsed = start.elapsed();
    verdict(
        rate >= 0.9 && within(elapsed, Duration::from_secs(30)),
        format!("{:.0}% of 100 trials reached 0.5 within {} iterations, {elapsed:?}", rate * 100.0, iteration_budget(8)),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 11] = [
        ("exact small case (N = 4)", exact_small_case),
        ("closed-form agreement", closed_form),
        ("two reflections make a rotation", theorem1),
        ("conjugated reflection", lemma2),
        ("negated reflection in 2D", lemma3),
        ("oracle round trips", oracle_round_trips),
        ("plane confinement", confinement),
        ("query scaling", query_scaling),
        ("squared-variant geometry", squared_geometry),
        ("zero-overlap failure mode", failure_mode),
        ("random-U efficacy", random_efficacy),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check().unwrap_or_else(|e| Verdict { passed: false, detail: format!("error: {e:#}") });
        if !v.passed {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {:<33} {}",
            if v.passed { "PASS" } else { "FAIL" },
            i + 1,
            name,
            v.detail
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
