//! Optional `key=value` defaults, read from the file named by
//! `LEGENDRE_DNU_CONFIG`. Command-line flags take precedence.

use std::path::Path;

use legendre_dnu::zdomain::Side;

use crate::report::{Mode, Output};
use crate::CliError;

pub const CONFIG_ENV: &str = "LEGENDRE_DNU_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Largest pairwise relative deviation accepted by `crosscheck`.
    pub tolerance: f64,
    /// Largest relative deviation from an oracle.
    pub oracle_tolerance: f64,
    /// Side for real `z > 1` where the result depends on it.
    pub side: Side,
    pub contour_nodes: usize,
    pub series_max_terms: usize,
    pub output: Output,
    pub mode: Mode,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            oracle_tolerance: 1e-6,
            side: Side::Above,
            contour_nodes: 256,
            series_max_terms: 20_000,
            output: Output::Csv,
            mode: Mode::Float,
        }
    }
}

fn bad(key: &str, value: &str) -> CliError {
    CliError::Usage(format!("config: invalid value `{value}` for `{key}`"))
}

impl Config {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "tolerance" => cfg.tolerance = value.parse().map_err(|_| bad(key, value))?,
                "oracle_tolerance" => cfg.oracle_tolerance = value.parse().map_err(|_| bad(key, value))?,
                "side" => cfg.side = value.parse().map_err(|_| bad(key, value))?,
                "contour_nodes" => cfg.contour_nodes = value.parse().map_err(|_| bad(key, value))?,
                "series_max_terms" => cfg.series_max_terms = value.parse().map_err(|_| bad(key, value))?,
                "output" => cfg.output = clap::ValueEnum::from_str(value, true).map_err(|_| bad(key, value))?,
                "mode" => cfg.mode = clap::ValueEnum::from_str(value, true).map_err(|_| bad(key, value))?,
                other => return Err(CliError::Usage(format!("config: unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file named by the environment, or the defaults.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }
}
