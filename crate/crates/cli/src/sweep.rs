//! Query-count sweeps over register width, for the speedup table.

use std::io::Write;

use anyhow::{bail, Result};
use grover_core::engine::{self, iteration_budget, IterateVariant, Preparation};
use grover_core::oracle::OracleSpec;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::stream_seed;

pub const SWEEP_HEADER: [&str; 10] = [
    "n",
    "n_items",
    "trial",
    "iterations",
    "queries",
    "found",
    "final_success_prob",
    "max_success_prob",
    "classical_prob",
    "status",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepPrep {
    /// Uniform start, step count from the known angle.
    Uniform,
    /// Seeded random start, fixed budget of `3 ceil(sqrt N)` steps.
    Random,
}

#[derive(Clone, Debug)]
pub struct SweepParams {
    pub n_min: usize,
    pub n_max: usize,
    pub trials: u64,
    pub seed: u64,
    pub variant: IterateVariant,
    pub prep: SweepPrep,
    pub max_qubits: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub n_items: u64,
    pub trial: u64,
    pub iterations: u64,
    pub queries: u64,
    pub found: bool,
    pub final_success_prob: f64,
    pub max_success_prob: f64,
    /// Classical `k/N` with `k` equal to the queries spent.
    pub classical_prob: f64,
    /// `ok`, or `budget_exceeded` when no iterate reached success 1/2.
    pub status: String,
}

fn sweep_one(params: &SweepParams, n: usize, trial: u64) -> Result<SweepRow> {
    let stream = stream_seed(params.seed, n as u64, trial);
    let oracle = OracleSpec::random(n, stream_seed(stream, 1, 0))?;
    let prep = match params.prep {
        SweepPrep::Uniform => Preparation::uniform(n)?,
        SweepPrep::Random => Preparation::seeded_random(n, stream_seed(stream, 2, 0))?,
    };
    let steps = match prep.known_alpha() {
        Some(alpha) => engine::optimal_steps(alpha, params.variant)?,
        None => iteration_budget(n),
    };
    let trace = engine::run(oracle, &prep, params.variant, steps, stream_seed(stream, 3, 0))?;
    let last = trace.last();
    let max_success_prob = trace.best().success_prob;
    let n_items = 1u64 << n;
    Ok(SweepRow {
        n,
        n_items,
        trial,
        iterations: last.iter,
        queries: last.queries,
        found: trace.measurement.found,
        final_success_prob: last.success_prob,
        max_success_prob,
        classical_prob: engine::classical_baseline(n_items, last.queries),
        status: if max_success_prob < 0.5 { "budget_exceeded" } else { "ok" }.to_owned(),
    })
}

/// One row per `(n, trial)`, ordered by `n` then `trial` regardless of the
/// order trials finish in.
pub fn sweep(params: &SweepParams) -> Result<Vec<SweepRow>> {
    if params.n_min < 1 || params.n_min > params.n_max {
        bail!("need 1 <= n_min <= n_max, got {}..={}", params.n_min, params.n_max);
    }
    if params.n_max > params.max_qubits {
        bail!(
            "n_max = {} exceeds the dense-simulation ceiling of {} qubits",
            params.n_max,
            params.max_qubits
        );
    }
    let jobs: Vec<(usize, u64)> = (params.n_min..=params.n_max)
        .flat_map(|n| (0..params.trials).map(move |t| (n, t)))
        .collect();
    jobs.par_iter()
        .map(|&(n, t)| sweep_one(params, n, t))
        .collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.n_items.to_string(),
            r.trial.to_string(),
            r.iterations.to_string(),
            r.queries.to_string(),
            u8::from(r.found).to_string(),
            r.final_success_prob.to_string(),
            r.max_success_prob.to_string(),
            r.classical_prob.to_string(),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln(queries)` against `ln(N)`, skipping rows with
/// zero queries.
pub fn log_log_slope(rows: &[SweepRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.queries > 0)
        .map(|r| ((r.n_items as f64).ln(), (r.queries as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
