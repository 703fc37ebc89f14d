//! Run configuration from `key = value` files and the environment.

use std::fmt;
use std::str::FromStr;

use qgkit_core::{Exponent, RootOrder};

pub const ROOT_ORDER_ENV: &str = "QGKIT_ROOT_ORDER";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(ConfigError(format!("unknown format `{other}` (json or text)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub root_order: RootOrder,
    pub degree_bound: usize,
    pub nu_grid: Vec<Exponent>,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            root_order: RootOrder::DEFAULT,
            degree_bound: 6,
            nu_grid: (-12..=12).map(|k| Exponent::new(k, 6).unwrap()).collect(),
            format: Format::Json,
        }
    }
}

/// `p`, `-p` or `p/r`.
pub fn parse_exponent(s: &str) -> Result<Exponent, ConfigError> {
    let bad = || ConfigError(format!("bad exponent `{s}` (expected p or p/r)"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    Exponent::new(n, d).ok_or_else(bad)
}

/// Comma-separated exponents.
pub fn parse_grid(s: &str) -> Result<Vec<Exponent>, ConfigError> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_exponent).collect()
}

fn root_order(s: &str) -> Result<RootOrder, ConfigError> {
    let m: i64 = s.trim().parse().map_err(|_| ConfigError(format!("bad root order `{s}`")))?;
    RootOrder::new(m).map_err(|e| ConfigError(e.to_string()))
}

impl Config {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value", i + 1)))?;
            let value = value.trim();
            let at = |e: ConfigError| ConfigError(format!("line {}: {}", i + 1, e.0));
            match key.trim() {
                "root_order" | "m" => self.root_order = root_order(value).map_err(at)?,
                "degree_bound" | "bound" => {
                    self.degree_bound =
                        value.parse().map_err(|_| at(ConfigError(format!("bad degree bound `{value}`"))))?
                }
                "nu_grid" => self.nu_grid = parse_grid(value).map_err(at)?,
                "format" => self.format = value.parse().map_err(at)?,
                other => return Err(at(ConfigError(format!("unknown key `{other}`")))),
            }
        }
        self.validate()
    }

    /// Environment override of `m`.
    pub fn apply_env(&mut self, root_order_env: Option<&str>) -> Result<(), ConfigError> {
        if let Some(v) = root_order_env {
            self.root_order = root_order(v).map_err(|e| ConfigError(format!("{ROOT_ORDER_ENV}: {}", e.0)))?;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.degree_bound < 2 {
            return Err(ConfigError(format!("degree bound {} below 2", self.degree_bound)));
        }
        Ok(())
    }
}
