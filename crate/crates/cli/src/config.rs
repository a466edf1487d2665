//! Run configuration: defaults, environment, flat `key = value` files, flags.
//!
//! Precedence, lowest first: built-in defaults, `SYMBETA_TOL`, config file,
//! command-line flags. `emit` and `parse` round-trip exactly.

use std::fmt;
use std::str::FromStr;

use symbeta::thermo::default_t_grid;
use symbeta::{Kneading, Params, PotentialSpec};

/// Environment variable that overrides the default tolerance.
pub const TOL_ENV: &str = "SYMBETA_TOL";

/// Largest cylinder alphabet power accepted for a basis.
const MAX_BASIS_WORDS: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Jsonl,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Table => "table",
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "table" => Ok(Format::Table),
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            _ => Err(ConfigError(format!("unknown format {s:?} (table, jsonl, csv)"))),
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

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub m: u8,
    /// Decimal, fraction, or `golden`, `beta_T`, `m+1`; kept as text so no
    /// precision is lost before exact parsing.
    pub beta: String,
    pub depth: usize,
    pub kneading_depth: usize,
    pub potential: PotentialSpec,
    pub t_grid: Vec<f64>,
    pub tol: f64,
    pub max_iter: usize,
    pub format: Format,
    /// Point for `expand`, as exact text.
    pub a: String,
    /// Digits printed by `expand`.
    pub digits: usize,
    /// Cylinders listed by `spectrum` and words by `words` unless `dump`.
    pub top: usize,
    pub dump: bool,
    /// Longest periodic orbit searched for the `m(A)` lower bound.
    pub max_period: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            m: 3,
            beta: "3.5".into(),
            depth: 4,
            kneading_depth: symbeta::shift::DEFAULT_KNEADING_DEPTH,
            potential: PotentialSpec::Zero,
            t_grid: default_t_grid(),
            tol: symbeta::SolveOptions::default().tol,
            max_iter: symbeta::SolveOptions::default().max_iter,
            format: Format::Table,
            a: "1".into(),
            digits: 40,
            top: 10,
            dump: false,
            max_period: 8,
        }
    }
}

/// Keys in emission order.
pub const KEYS: &[&str] = &[
    "m",
    "beta",
    "depth",
    "kneading_depth",
    "potential",
    "t_grid",
    "tol",
    "max_iter",
    "format",
    "a",
    "digits",
    "top",
    "dump",
    "max_period",
];

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse()
        .map_err(|_| ConfigError(format!("{key}: cannot parse {v:?}")))
}

pub fn parse_grid(v: &str) -> Result<Vec<f64>, ConfigError> {
    v.split(',')
        .map(|s| parse_num::<f64>("t_grid", s.trim()))
        .collect()
}

impl RunConfig {
    /// Defaults with the environment applied.
    pub fn from_env() -> Result<Self, ConfigError> {
        let mut c = RunConfig::default();
        if let Ok(v) = std::env::var(TOL_ENV) {
            c.tol = parse_num(TOL_ENV, v.trim())?;
        }
        Ok(c)
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<(), ConfigError> {
        let v = v.trim();
        match key {
            "m" => self.m = parse_num(key, v)?,
            "beta" => self.beta = v.to_string(),
            "depth" => self.depth = parse_num(key, v)?,
            "kneading_depth" => self.kneading_depth = parse_num(key, v)?,
            "potential" => {
                self.potential = v
                    .parse()
                    .map_err(|e| ConfigError(format!("potential: {e}")))?
            }
            "t_grid" => self.t_grid = parse_grid(v)?,
            "tol" => self.tol = parse_num(key, v)?,
            "max_iter" => self.max_iter = parse_num(key, v)?,
            "format" => self.format = v.parse()?,
            "a" => self.a = v.to_string(),
            "digits" => self.digits = parse_num(key, v)?,
            "top" => self.top = parse_num(key, v)?,
            "dump" => self.dump = parse_num(key, v)?,
            "max_period" => self.max_period = parse_num(key, v)?,
            _ => return err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> String {
        match key {
            "m" => self.m.to_string(),
            "beta" => self.beta.clone(),
            "depth" => self.depth.to_string(),
            "kneading_depth" => self.kneading_depth.to_string(),
            "potential" => self.potential.to_string(),
            "t_grid" => self
                .t_grid
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(","),
            "tol" => format!("{:e}", self.tol),
            "max_iter" => self.max_iter.to_string(),
            "format" => self.format.to_string(),
            "a" => self.a.clone(),
            "digits" => self.digits.to_string(),
            "top" => self.top.to_string(),
            "dump" => self.dump.to_string(),
            "max_period" => self.max_period.to_string(),
            _ => unreachable!("unknown key {key}"),
        }
    }

    /// Applies a `key = value` file over `self`. Blank lines and lines
    /// starting with `#` are ignored; a key may appear once.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        let mut seen = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return err(format!("line {}: expected key = value", i + 1));
            };
            let k = k.trim();
            if seen.contains(&k) {
                return err(format!("line {}: duplicate key {k:?}", i + 1));
            }
            seen.push(k);
            self.set(k, v)
                .map_err(|e| ConfigError(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    #[cfg(test)]
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut c = RunConfig::default();
        c.apply_text(text)?;
        Ok(c)
    }

    pub fn emit(&self) -> String {
        KEYS.iter()
            .map(|k| format!("{k} = {}\n", self.get(k)))
            .collect()
    }

    pub fn pairs(&self) -> Vec<(String, String)> {
        KEYS.iter().map(|k| (k.to_string(), self.get(k))).collect()
    }

    /// Rejects bad ranges before any computation.
    pub fn validate(&self) -> Result<Params, ConfigError> {
        let p = Params::parse(self.m, &self.beta).map_err(|e| ConfigError(e.to_string()))?;
        if self.depth == 0 {
            return err("depth must be at least 1");
        }
        if (self.m as u64 + 1).checked_pow(self.depth as u32).is_none_or(|w| w > MAX_BASIS_WORDS) {
            return err(format!("depth {} gives more than {MAX_BASIS_WORDS} candidate words", self.depth));
        }
        if !(8..=4096).contains(&self.kneading_depth) {
            return err("kneading_depth must lie in 8..=4096");
        }
        self.potential
            .validate(self.m)
            .map_err(|e| ConfigError(e.to_string()))?;
        if self.t_grid.is_empty()
            || self.t_grid.iter().any(|t| !t.is_finite() || *t <= 0.0)
            || self.t_grid.windows(2).any(|w| w[1] <= w[0])
        {
            return err("t_grid must be positive, finite and strictly increasing");
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return err("tol must lie in (0, 1)");
        }
        if self.max_iter == 0 {
            return err("max_iter must be at least 1");
        }
        if !(1..=4096).contains(&self.digits) {
            return err("digits must lie in 1..=4096");
        }
        if self.top == 0 {
            return err("top must be at least 1");
        }
        if !(1..=16).contains(&self.max_period) {
            return err("max_period must lie in 1..=16");
        }
        p.scalar(&self.a).map_err(|e| ConfigError(format!("a: {e}")))?;
        Ok(p)
    }

    pub fn kneading(&self, p: &Params) -> Kneading {
        Kneading::new(p, self.kneading_depth)
    }

    pub fn solve_options(&self) -> symbeta::SolveOptions {
        symbeta::SolveOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            ..Default::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_parse_round_trip() {
        let mut c = RunConfig::default();
        c.m = 4;
        c.beta = "beta_T".into();
        c.potential = "geometric:c=0.7,theta=0.3,K=25".parse().unwrap();
        c.t_grid = vec![0.5, 1.0, 3.25];
        c.tol = 2.5e-11;
        c.format = Format::Jsonl;
        c.dump = true;
        let back = RunConfig::parse(&c.emit()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.emit(), c.emit());
        assert_eq!(RunConfig::parse(&RunConfig::default().emit()).unwrap(), RunConfig::default());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("m = 3\nm = 4").is_err());
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("depth 4").is_err());
        assert!(RunConfig::parse("format = xml").is_err());
        let bad = |text: &str| RunConfig::parse(text).unwrap().validate().is_err();
        assert!(bad("beta = 5"));
        assert!(bad("beta = 1"));
        assert!(bad("t_grid = 1,4,2"));
        assert!(bad("tol = 0"));
        assert!(bad("depth = 0"));
        assert!(bad("potential = digit:1,2"));
        assert!(bad("m = 9\ndepth = 12"));
        assert!(!bad("# comment\n\nm = 2\nbeta = golden"));
    }
}
