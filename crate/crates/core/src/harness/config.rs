//! Suite configuration: a flat TOML document.
//!
//! ```toml
//! schema_version = 1
//! statements = ["theorem1", "conjecture"]
//! prime_min = 3
//! prime_max = 200
//! x_values = ["-1/2", "-1/3", "-1/4", "-1/6"]
//! x_integers = 20        # adds 0..=min(p-1, 20) per prime
//! x_random = 10          # adds seeded random p-integral a/b, |a|, b <= 20
//! seed = 1
//! oracle_mode = "spot"   # off | spot | full
//! parallelism = 4
//! output_path = "results.jsonl"
//! ```
//!
//! The statement `weighted` additionally needs `weight = [a, b]` and
//! `expected_p_multiple = c`, checking sum (an+b) t_n(x)^2 = c*p mod p^2.
//! `rhs_offset_p = k` shifts every expected residue by k*p, which is only
//! useful to confirm that failures are reported.

use std::path::PathBuf;

use serde::Deserialize;

use crate::congruence::{OracleMode, Statement};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PRIME_CAP: u64 = 500;
pub const DEFAULT_CUBE_PRIME_CAP: u64 = 100;
/// Directory for the default output file when `output_path` is absent.
pub const OUTPUT_DIR_ENV: &str = "SUPERCONG_OUTPUT_DIR";
pub const DEFAULT_OUTPUT_FILE: &str = "results.jsonl";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    statements: Vec<String>,
    prime_min: Option<u64>,
    prime_max: Option<u64>,
    x_values: Option<Vec<String>>,
    x_integers: Option<u64>,
    x_random: Option<usize>,
    seed: Option<u64>,
    oracle_mode: Option<String>,
    parallelism: Option<usize>,
    output_path: Option<PathBuf>,
    weight: Option<[i64; 2]>,
    expected_p_multiple: Option<i64>,
    rhs_offset_p: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub statements: Vec<Statement>,
    pub prime_min: u64,
    /// Explicit upper bound; when absent each statement uses its default cap.
    pub prime_max: Option<u64>,
    pub x_values: Vec<Rational>,
    pub x_integers: Option<u64>,
    pub x_random: usize,
    pub seed: u64,
    pub oracle_mode: OracleMode,
    pub parallelism: usize,
    pub output_path: PathBuf,
    pub rhs_offset_p: i64,
}

pub fn default_x_values() -> Vec<Rational> {
    ["-1/2", "-1/3", "-1/4", "-1/6"].iter().map(|s| parse_rational(s).expect("literal")).collect()
}

pub fn default_output_path() -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir).join(DEFAULT_OUTPUT_FILE),
        None => PathBuf::from(DEFAULT_OUTPUT_FILE),
    }
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl SuiteConfig {
    /// A configuration for `statements` with every other field defaulted.
    pub fn new(statements: Vec<Statement>) -> Self {
        SuiteConfig {
            statements,
            prime_min: 3,
            prime_max: None,
            x_values: default_x_values(),
            x_integers: None,
            x_random: 0,
            seed: 1,
            oracle_mode: OracleMode::default(),
            parallelism: default_parallelism(),
            output_path: default_output_path(),
            rhs_offset_p: 0,
        }
    }

    /// Largest prime scanned for `statement`.
    pub fn prime_cap(&self, statement: Statement) -> u64 {
        self.prime_max.unwrap_or(match statement {
            Statement::Kw => DEFAULT_CUBE_PRIME_CAP,
            _ => DEFAULT_PRIME_CAP,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.prime_min < 3 {
            return Err(Error::Parse(format!("prime_min: must be at least 3, got {}", self.prime_min)));
        }
        if let Some(max) = self.prime_max {
            if max < self.prime_min {
                return Err(Error::Parse(format!("prime_max: {max} is below prime_min {}", self.prime_min)));
            }
        }
        if self.statements.is_empty() {
            return Err(Error::Parse("statements: at least one statement is required".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::Parse("parallelism: must be positive".into()));
        }
        Ok(())
    }
}

/// Expands statement ids, resolving `weighted` against the weight keys.
pub fn resolve_statements(ids: &[String], weight: Option<[i64; 2]>, expected: Option<i64>) -> Result<Vec<Statement>> {
    let mut out = Vec::new();
    for id in ids {
        if id == "weighted" {
            let ([a, b], c) = weight.zip(expected).ok_or_else(|| {
                Error::Parse("statements: \"weighted\" needs both `weight` and `expected_p_multiple`".into())
            })?;
            out.push(Statement::Weighted { a, b, expected_p_multiple: c });
        } else {
            out.extend(Statement::parse_group(id).map_err(|e| Error::Parse(format!("statements: {e}")))?);
        }
    }
    Ok(out)
}

pub fn parse_config(text: &str) -> Result<SuiteConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version: unsupported version {} (expected {SCHEMA_VERSION})",
            raw.schema_version
        )));
    }
    let mut cfg = SuiteConfig::new(resolve_statements(&raw.statements, raw.weight, raw.expected_p_multiple)?);
    if let Some(v) = raw.prime_min {
        cfg.prime_min = v;
    }
    cfg.prime_max = raw.prime_max;
    if let Some(xs) = raw.x_values {
        cfg.x_values = xs
            .iter()
            .map(|s| parse_rational(s).map_err(|e| Error::Parse(format!("x_values: {e}"))))
            .collect::<Result<_>>()?;
    }
    cfg.x_integers = raw.x_integers;
    cfg.x_random = raw.x_random.unwrap_or(0);
    if let Some(seed) = raw.seed {
        cfg.seed = seed;
    }
    if let Some(mode) = raw.oracle_mode {
        cfg.oracle_mode = mode.parse().map_err(|e| Error::Parse(format!("oracle_mode: {e}")))?;
    }
    if let Some(n) = raw.parallelism {
        cfg.parallelism = n;
    }
    if let Some(path) = raw.output_path {
        cfg.output_path = path;
    }
    cfg.rhs_offset_p = raw.rhs_offset_p.unwrap_or(0);
    cfg.validate()?;
    Ok(cfg)
}
