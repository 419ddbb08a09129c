use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use grover_core::engine::{IterateVariant, Preparation};
use grover_core::linalg::DenseUnitary;
use grover_core::oracle::{parse_marked, OracleSpec};
use serde::{Deserialize, Serialize};

use crate::stream_seed;

/// Labels for the streams derived from the run seed.
const X0_STREAM: u64 = 1;
const PREP_STREAM: u64 = 2;
const MEASURE_STREAM: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MarkedChoice {
    Given(String),
    Random,
}

impl FromStr for MarkedChoice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(if s == "random" { Self::Random } else { Self::Given(s.to_owned()) })
    }
}

impl fmt::Display for MarkedChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Given(s) => f.write_str(s),
            Self::Random => f.write_str("random"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrepChoice {
    Uniform,
    Random,
    File(PathBuf),
}

impl FromStr for PrepChoice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "random" => Ok(Self::Random),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(Self::File(PathBuf::from(path))),
                _ => bail!("unknown preparation {s:?} (expected uniform, random or file:PATH)"),
            },
        }
    }
}

impl fmt::Display for PrepChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform => f.write_str("uniform"),
            Self::Random => f.write_str("random"),
            Self::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterChoice {
    /// Nearest step count to a quarter turn; needs a known angle.
    Auto,
    Fixed(u64),
    /// Run this many steps and report the best one.
    Budget(u64),
}

impl FromStr for IterChoice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Self::Auto);
        }
        if let Some(k) = s.strip_prefix("budget:") {
            return Ok(Self::Budget(k.parse().with_context(|| format!("bad budget {k:?}"))?));
        }
        Ok(Self::Fixed(s.parse().with_context(|| {
            format!("bad iteration count {s:?} (expected auto, INT or budget:INT)")
        })?))
    }
}

impl fmt::Display for IterChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Auto => f.write_str("auto"),
            Self::Fixed(k) => write!(f, "{k}"),
            Self::Budget(k) => write!(f, "budget:{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

/// A single experiment, as given on the command line or in a config file.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub x0: MarkedChoice,
    pub prep: PrepChoice,
    pub variant: IterateVariant,
    pub iters: IterChoice,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub max_qubits: usize,
}

/// Config-file form: `{n, x0_hex, prep, variant, max_iters, seed}`.
/// `x0_hex` may be `"random"`; `max_iters` is a number, `"auto"` or
/// `"budget:K"`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: usize,
    pub x0_hex: String,
    #[serde(default = "default_prep")]
    pub prep: String,
    #[serde(default = "default_variant")]
    pub variant: IterateVariant,
    #[serde(default = "default_iters")]
    pub max_iters: serde_json::Value,
    #[serde(default)]
    pub seed: u64,
}

fn default_prep() -> String {
    "uniform".into()
}

fn default_variant() -> IterateVariant {
    IterateVariant::MinusSign
}

fn default_iters() -> serde_json::Value {
    serde_json::Value::String("auto".into())
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn into_config(self) -> Result<ExperimentConfig> {
        let x0 = if self.x0_hex == "random" {
            MarkedChoice::Random
        } else if self.x0_hex.starts_with("0x") {
            MarkedChoice::Given(self.x0_hex)
        } else {
            MarkedChoice::Given(format!("0x{}", self.x0_hex))
        };
        let iters = match &self.max_iters {
            serde_json::Value::Number(k) => IterChoice::Fixed(
                k.as_u64().ok_or_else(|| anyhow!("max_iters must be a non-negative integer"))?,
            ),
            serde_json::Value::String(s) => s.parse()?,
            other => bail!("max_iters must be a number or string, got {other}"),
        };
        Ok(ExperimentConfig {
            n: self.n,
            x0,
            prep: self.prep.parse()?,
            variant: self.variant,
            iters,
            seed: self.seed,
            output_path: None,
            format: OutputFormat::default(),
            max_qubits: crate::DEFAULT_MAX_QUBITS,
        })
    }
}

/// Echo of the config in result files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub x0: String,
    pub prep: String,
    pub variant: IterateVariant,
    pub iters: String,
    pub seed: u64,
}

/// Everything needed to call the engine.
pub struct Resolved {
    pub oracle: OracleSpec,
    pub prep: Preparation,
    pub steps: u64,
    pub measure_seed: u64,
}

impl ExperimentConfig {
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n: self.n,
            x0: self.x0.to_string(),
            prep: self.prep.to_string(),
            variant: self.variant,
            iters: self.iters.to_string(),
            seed: self.seed,
        }
    }

    pub fn resolve(&self) -> Result<Resolved> {
        if self.n == 0 {
            bail!("--n must be at least 1");
        }
        if self.n > self.max_qubits {
            bail!(
                "n = {} exceeds the dense-simulation ceiling of {} qubits; raise it with --max-qubits \
                 (each state needs 2^n * 16 bytes)",
                self.n,
                self.max_qubits
            );
        }
        let oracle = match &self.x0 {
            MarkedChoice::Random => OracleSpec::random(self.n, stream_seed(self.seed, X0_STREAM, 0))?,
            MarkedChoice::Given(s) => OracleSpec::new(self.n, parse_marked(s, self.n)?)?,
        };
        let prep = match &self.prep {
            PrepChoice::Uniform => Preparation::uniform(self.n)?,
            PrepChoice::Random => {
                Preparation::seeded_random(self.n, stream_seed(self.seed, PREP_STREAM, 0))?
            }
            PrepChoice::File(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading unitary {}", path.display()))?;
                let u: DenseUnitary = serde_json::from_str(&text)
                    .with_context(|| format!("parsing unitary {}", path.display()))?;
                if u.dim() != 1 << self.n {
                    bail!("unitary in {} has dimension {}, expected 2^{}", path.display(), u.dim(), self.n);
                }
                Preparation::explicit(u)
            }
        };
        let steps = match self.iters {
            IterChoice::Fixed(k) | IterChoice::Budget(k) => k,
            IterChoice::Auto => {
                let alpha = prep.known_alpha().ok_or_else(|| {
                    anyhow!(
                        "--iters auto needs a known rotation angle, which the {} preparation does not \
                         provide; use --iters budget:K",
                        self.prep
                    )
                })?;
                grover_core::engine::optimal_steps(alpha, self.variant)?
            }
        };
        Ok(Resolved {
            oracle,
            prep,
            steps,
            measure_seed: stream_seed(self.seed, MEASURE_STREAM, 0),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ExperimentConfig {
        ExperimentConfig {
            n: 2,
            x0: MarkedChoice::Given("11".into()),
            prep: PrepChoice::Uniform,
            variant: IterateVariant::MinusSign,
            iters: IterChoice::Auto,
            seed: 0,
            output_path: None,
            format: OutputFormat::Json,
            max_qubits: crate::DEFAULT_MAX_QUBITS,
        }
    }

    #[test]
    fn parses_flag_values() {
        assert_eq!("auto".parse::<IterChoice>().unwrap(), IterChoice::Auto);
        assert_eq!("12".parse::<IterChoice>().unwrap(), IterChoice::Fixed(12));
        assert_eq!("budget:48".parse::<IterChoice>().unwrap(), IterChoice::Budget(48));
        assert!("budget:x".parse::<IterChoice>().is_err());
        assert_eq!(
            "file:u.json".parse::<PrepChoice>().unwrap(),
            PrepChoice::File("u.json".into())
        );
        assert!("gaussian".parse::<PrepChoice>().is_err());
        assert_eq!("random".parse::<MarkedChoice>().unwrap(), MarkedChoice::Random);
    }

    #[test]
    fn auto_iterations_for_uniform() {
        let r = base().resolve().unwrap();
        assert_eq!(r.steps, 1);
        assert!(r.oracle.grade(3));
    }

    #[test]
    fn auto_rejected_for_random_prep() {
        let mut c = base();
        c.prep = PrepChoice::Random;
        let err = c.resolve().err().unwrap().to_string();
        assert!(err.contains("budget"), "{err}");
        c.iters = IterChoice::Budget(6);
        assert_eq!(c.resolve().unwrap().steps, 6);
    }

    #[test]
    fn ceiling_enforced() {
        let mut c = base();
        c.n = 25;
        c.x0 = MarkedChoice::Random;
        assert!(c.resolve().is_err());
    }

    #[test]
    fn config_file_form() {
        let f: ConfigFile = serde_json::from_str(
            r#"{"n": 10, "x0_hex": "2a7", "prep": "uniform", "variant": "squared", "max_iters": 5, "seed": 9}"#,
        )
        .unwrap();
        let c = f.into_config().unwrap();
        assert_eq!(c.x0, MarkedChoice::Given("0x2a7".into()));
        assert_eq!(c.iters, IterChoice::Fixed(5));
        assert_eq!(c.variant, IterateVariant::Squared);
        assert!(c.resolve().unwrap().oracle.grade(0x2a7));

        let f: ConfigFile =
            serde_json::from_str(r#"{"n": 4, "x0_hex": "random", "max_iters": "budget:12"}"#).unwrap();
        let c = f.into_config().unwrap();
        assert_eq!(c.iters, IterChoice::Budget(12));
        assert!(serde_json::from_str::<ConfigFile>(r#"{"n": 4, "x0_hex": "1", "bogus": 1}"#).is_err());
    }
}
