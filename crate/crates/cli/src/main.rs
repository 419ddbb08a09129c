use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use grover_cli::config::{
    ConfigFile, ExperimentConfig, IterChoice, MarkedChoice, OutputFormat, PrepChoice,
};
use grover_cli::sweep::{self, SweepParams, SweepPrep};
use grover_cli::{run, DEFAULT_MAX_QUBITS};
use grover_core::engine::IterateVariant;
use grover_core::verify;

#[derive(Parser)]
#[command(name = "grover", version, about = "Dense state-vector simulator for amplitude amplification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one search and write the per-iteration trace.
    Run(RunArgs),
    /// Sweep register widths and tabulate queries against the classical baseline.
    Sweep(SweepArgs),
    /// Run the built-in property checks.
    Verify {
        /// Run only the named check.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON config file; flags given alongside it take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of qubits.
    #[arg(long)]
    n: Option<usize>,
    /// Marked item: n binary digits, 0x-prefixed hex, or `random`.
    #[arg(long)]
    x0: Option<MarkedChoice>,
    /// `uniform`, `random` or `file:PATH` (JSON unitary).
    #[arg(long)]
    prep: Option<PrepChoice>,
    /// `minus` or `squared`.
    #[arg(long)]
    variant: Option<IterateVariant>,
    /// `auto`, a step count, or `budget:K`.
    #[arg(long)]
    iters: Option<IterChoice>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = IterateVariant::MinusSign)]
    variant: IterateVariant,
    #[arg(long, value_enum, default_value_t = SweepPrep::Uniform)]
    prep: SweepPrep,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
}

impl RunArgs {
    fn into_config(self) -> Result<ExperimentConfig> {
        let mut config = match &self.config {
            Some(path) => ConfigFile::load(path)?.into_config()?,
            None => {
                let Some(n) = self.n else {
                    bail!("--n is required without --config");
                };
                ExperimentConfig {
                    n,
                    x0: MarkedChoice::Random,
                    prep: PrepChoice::Uniform,
                    variant: IterateVariant::MinusSign,
                    iters: IterChoice::Auto,
                    seed: 0,
                    output_path: None,
                    format: OutputFormat::default(),
                    max_qubits: DEFAULT_MAX_QUBITS,
                }
            }
        };
        if let Some(n) = self.n {
            config.n = n;
        }
        if let Some(x0) = self.x0 {
            config.x0 = x0;
        }
        if let Some(prep) = self.prep {
            config.prep = prep;
        }
        if let Some(variant) = self.variant {
            config.variant = variant;
        }
        if let Some(iters) = self.iters {
            config.iters = iters;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(format) = self.format {
            config.format = format;
        }
        config.output_path = self.out;
        config.max_qubits = self.max_qubits;
        Ok(config)
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let params = SweepParams {
        n_min: args.n_min,
        n_max: args.n_max,
        trials: args.trials,
        seed: args.seed,
        variant: args.variant,
        prep: args.prep,
        max_qubits: args.max_qubits,
    };
    let rows = sweep::sweep(&params)?;
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            sweep::write_csv(&rows, std::io::BufWriter::new(file))?;
        }
        None => sweep::write_csv(&rows, std::io::stdout().lock())?,
    }
    if let Some(slope) = sweep::log_log_slope(&rows) {
        eprintln!("log-log slope of queries against N: {slope:.3}");
    }
    Ok(())
}

fn cmd_verify(only: Option<&str>) -> Result<bool> {
    if let Some(name) = only {
        if !verify::suites().iter().any(|s| s.name == name) {
            let names: Vec<_> = verify::suites().iter().map(|s| s.name).collect();
            bail!("unknown check {name:?}; available: {}", names.join(", "));
        }
    }
    let reports = verify::run_suites(only);
    let mut out = std::io::stdout().lock();
    writeln!(out, "{:<17} {:<6} {:>12} {:>12} {:>9}  detail", "check", "result", "measured", "threshold", "time")?;
    let mut ok = true;
    for r in &reports {
        let o = &r.outcome;
        ok &= o.passed;
        writeln!(
            out,
            "{:<17} {:<6} {:>12.3e} {:>12.3e} {:>8.1}ms  {}",
            r.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.measured,
            o.threshold,
            r.elapsed.as_secs_f64() * 1e3,
            o.detail
        )?;
    }
    let failed = reports.iter().filter(|r| !r.outcome.passed).count();
    writeln!(out, "{} checks, {} failed", reports.len(), failed)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => args.into_config().and_then(|config| {
            let to_file = config.output_path.is_some();
            let line = run::cmd_run(&config)?;
            if to_file {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(true)
        }),
        Command::Sweep(args) => cmd_sweep(args).map(|()| true),
        Command::Verify { only } => cmd_verify(only.as_deref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
