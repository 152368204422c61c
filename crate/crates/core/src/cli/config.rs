//! Sweep configuration: flat `key = value` lines, ranges written `lo..hi` (inclusive).

use std::ops::RangeInclusive;
use std::path::PathBuf;

use thiserror::Error;

use crate::algebra::{Field, DEFAULT_PRIMES};

/// Environment variable with a comma-separated list of primes replacing the defaults.
pub const PRIMES_ENV: &str = "WARING_PRIMES";

/// Primes taken from the list when none are named explicitly.
pub const DEFAULT_PRIME_COUNT: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Prime,
    Rational,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub d: RangeInclusive<u32>,
    pub n: RangeInclusive<u32>,
    /// `None` scans every `l` with expected dimension at least `-(n+1)`.
    pub l: Option<RangeInclusive<u32>>,
    pub h: RangeInclusive<u32>,
    pub trials: u32,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub mode: Mode,
}

impl RunConfig {
    /// Fields the run uses, primes first.
    pub fn fields(&self) -> Vec<Field> {
        fields_for(self.mode, &self.primes)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, r) in [("d", &self.d), ("n", &self.n), ("h", &self.h)] {
            if r.is_empty() {
                return Err(ConfigError::Invalid(format!("range `{name}` is empty")));
            }
        }
        if self.l.as_ref().is_some_and(|r| r.is_empty()) {
            return Err(ConfigError::Invalid("range `l` is empty".into()));
        }
        if *self.d.start() < 1 || *self.n.start() < 1 {
            return Err(ConfigError::Invalid("d and n start at 1".into()));
        }
        if self.trials == 0 {
            return Err(ConfigError::Invalid("trials must be at least 1".into()));
        }
        if self.mode != Mode::Rational && self.primes.is_empty() {
            return Err(ConfigError::Invalid("no primes given".into()));
        }
        validate_primes(&self.primes, *self.d.end())
    }
}

pub fn fields_for(mode: Mode, primes: &[u64]) -> Vec<Field> {
    let mut out: Vec<Field> = match mode {
        Mode::Rational => Vec::new(),
        _ => primes.iter().map(|&p| Field::Prime(p)).collect(),
    };
    if mode != Mode::Prime {
        out.push(Field::Rational);
    }
    out
}

pub fn validate_primes(primes: &[u64], max_degree: u32) -> Result<(), ConfigError> {
    for &p in primes {
        Field::prime(p).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if p <= u64::from(max_degree) {
            return Err(ConfigError::Invalid(format!(
                "prime {p} does not exceed degree {max_degree}"
            )));
        }
    }
    Ok(())
}

/// The default prime list, or the one in [`PRIMES_ENV`].
pub fn default_primes() -> Result<Vec<u64>, ConfigError> {
    match std::env::var(PRIMES_ENV) {
        Ok(v) if !v.trim().is_empty() => parse_primes(&v),
        _ => Ok(DEFAULT_PRIMES.to_vec()),
    }
}

pub fn parse_primes(s: &str) -> Result<Vec<u64>, ConfigError> {
    let primes = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| ConfigError::Invalid(format!("bad prime `{}`", t.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    validate_primes(&primes, 0)?;
    Ok(primes)
}

/// `a..b` (inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad number `{}`", t.trim()))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut d = None;
    let mut n = None;
    let mut l = None;
    let mut h = 0..=0;
    let mut trials = 3;
    let mut primes = None;
    let mut seed = 0;
    let mut out = None;
    let mut mode = Mode::Prime;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: String| ConfigError::Syntax { line: i + 1, msg };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| syntax("expected `key = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let range = || parse_range(value).map_err(syntax);
        match key {
            "d" => d = Some(range()?),
            "n" => n = Some(range()?),
            "l" => l = Some(range()?),
            "h" => h = range()?,
            "trials" => trials = value.parse().map_err(|_| syntax(format!("bad trials `{value}`")))?,
            "seed" => seed = value.parse().map_err(|_| syntax(format!("bad seed `{value}`")))?,
            "primes" => primes = Some(parse_primes(value).map_err(|e| syntax(e.to_string()))?),
            "out" => out = Some(PathBuf::from(value)),
            "mode" => {
                mode = <Mode as clap::ValueEnum>::from_str(value, true)
                    .map_err(|_| syntax(format!("bad mode `{value}`")))?
            }
            other => return Err(syntax(format!("unknown key `{other}`"))),
        }
    }
    let primes = match primes {
        Some(p) => p,
        None => default_primes()?.into_iter().take(DEFAULT_PRIME_COUNT).collect(),
    };
    let cfg = RunConfig {
        d: d.ok_or(ConfigError::Missing("d"))?,
        n: n.ok_or(ConfigError::Missing("n"))?,
        l,
        h,
        trials,
        primes,
        seed,
        out,
        mode,
    };
    cfg.validate()?;
    Ok(cfg)
}
