use std::io::Write;

use anyhow::{Context, Result};
use grover_core::engine::{self, IterationTrace};
use grover_core::geometry::{compare_trace, GeometryReport, RotationModel};
use serde::{Deserialize, Serialize};

use crate::config::{ConfigEcho, ExperimentConfig, IterChoice, OutputFormat};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n_items: u64,
    pub iterations: u64,
    pub queries: u64,
    /// Measured basis index of the final iterate.
    pub guess: usize,
    pub found: bool,
    pub final_success_prob: f64,
    /// Best iterate in the trace; the reported answer in budget mode.
    pub best_iter: u64,
    pub best_success_prob: f64,
    pub zero_overlap: bool,
    /// `k/N` for a classical search examining as many records as queries spent.
    pub classical_success_same_queries: f64,
    /// Records a classical search examines to match `final_success_prob`.
    pub classical_queries_same_success: u64,
}

/// JSON result file: `{config, trace, geometry_report, summary}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub config: ConfigEcho,
    pub trace: IterationTrace,
    pub geometry_report: GeometryReport,
    pub summary: Summary,
}

pub fn execute(config: &ExperimentConfig) -> Result<Envelope> {
    let resolved = config.resolve()?;
    let trace = engine::run(
        resolved.oracle,
        &resolved.prep,
        config.variant,
        resolved.steps,
        resolved.measure_seed,
    )?;
    let geometry_report = compare_trace(&trace, &RotationModel::from_alpha(trace.alpha));

    let n_items = 1u64 << config.n;
    let last = trace.last();
    let best = trace.best();
    let summary = Summary {
        n_items,
        iterations: last.iter,
        queries: last.queries,
        guess: trace.measurement.outcome,
        found: trace.measurement.found,
        final_success_prob: last.success_prob,
        best_iter: best.iter,
        best_success_prob: best.success_prob,
        zero_overlap: trace.zero_overlap,
        classical_success_same_queries: engine::classical_baseline(n_items, last.queries),
        classical_queries_same_success: (last.success_prob * n_items as f64).ceil() as u64,
    };
    Ok(Envelope {
        config: config.echo(),
        trace,
        geometry_report,
        summary,
    })
}

pub fn write_result<W: Write>(envelope: &Envelope, format: OutputFormat, mut out: W) -> Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, envelope)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => envelope.trace.write_csv(&mut out)?,
    }
    out.flush()?;
    Ok(())
}

/// Runs, writes the result file (or stdout) and returns a one-line report.
pub fn cmd_run(config: &ExperimentConfig) -> Result<String> {
    let envelope = execute(config)?;
    match &config.output_path {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            write_result(&envelope, config.format, std::io::BufWriter::new(file))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => write_result(&envelope, config.format, std::io::stdout().lock())?,
    }
    let s = &envelope.summary;
    let mut line = format!(
        "guess {:#x} ({}), queries {}, success probability {:.6}",
        s.guess,
        if s.found { "matched" } else { "did not match" },
        s.queries,
        s.final_success_prob
    );
    if matches!(config.iters, IterChoice::Budget(_)) {
        line.push_str(&format!(
            "; best iterate {} with success probability {:.6}",
            s.best_iter, s.best_success_prob
        ));
    }
    if s.zero_overlap {
        line.push_str("; start state is orthogonal to the marked state (zero rotation)");
    }
    Ok(line)
}
