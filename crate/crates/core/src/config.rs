//! Run configuration: tolerances, grids, derivative order, threads and
//! output format, read from plain `key = value` text.
//!
//! ```text
//! # comment
//! tol_tight = 1e-7
//! grid = 0.05:50:20
//! format = csv
//! ```

use crate::error::{Error, Result};
use crate::stieltjes::{log_grid, TolClass};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// `n` log-spaced points on [lo, hi], written `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogGrid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl LogGrid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        let g = LogGrid { lo, hi, n };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo > 0.0 && self.hi >= self.lo && self.hi.is_finite()) || self.n == 0 {
            return Err(Error::Param(format!("grid {self}: need 0 < lo <= hi and n >= 1")));
        }
        if self.n == 1 && self.hi != self.lo {
            return Err(Error::Param(format!("grid {self}: one point needs lo = hi")));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        log_grid(self.lo, self.hi, self.n)
    }
}

impl fmt::Display for LogGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.n)
    }
}

impl FromStr for LogGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("grid '{s}': expected lo:hi:n")));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("grid '{s}': '{t}' is not a number")))
        };
        let n = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("grid '{s}': bad count")))?;
        LogGrid::new(num(parts[0])?, num(parts[1])?, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Parse(format!("format '{s}': expected json or csv"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Residual bound for tight-class identities.
    pub tol_tight: f64,
    /// Residual bound for hard-class identities.
    pub tol_hard: f64,
    /// x grid for Bernstein and self-decomposability checks.
    pub grid: LogGrid,
    /// z grid for the identity catalog.
    pub z_grid: LogGrid,
    pub max_order: usize,
    pub threads: usize,
    pub format: OutputFormat,
    /// Leave timings out of reports.
    pub stable: bool,
    /// Also run identities on their extended (unproven) domains.
    pub extended_domain: bool,
    /// Also run checks outside the proven parameter regions.
    pub outside_proven_region: bool,
    /// Inconclusive rows do not fail the run.
    pub allow_inconclusive: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tol_tight: TolClass::Tight.value(),
            tol_hard: TolClass::Hard.value(),
            grid: LogGrid {
                lo: 0.05,
                hi: 50.0,
                n: 20,
            },
            z_grid: LogGrid {
                lo: 1e-2,
                hi: 1e2,
                n: 7,
            },
            max_order: 8,
            threads: 1,
            format: OutputFormat::Json,
            stable: false,
            extended_domain: false,
            outside_proven_region: false,
            allow_inconclusive: false,
        }
    }
}

pub const KEYS: [&str; 11] = [
    "tol_tight",
    "tol_hard",
    "grid",
    "z_grid",
    "max_order",
    "threads",
    "format",
    "stable",
    "extended_domain",
    "outside_proven_region",
    "allow_inconclusive",
];

fn parse_bool(k: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Parse(format!("{k}: '{v}' is not a boolean"))),
    }
}

impl RunConfig {
    pub fn tol_for(&self, c: TolClass) -> f64 {
        match c {
            TolClass::Tight => self.tol_tight,
            TolClass::Hard => self.tol_hard,
        }
    }

    /// Sets one key; `-` and `_` are interchangeable in key names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let k = key.trim().replace('-', "_");
        let v = value.trim();
        let num = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::Parse(format!("{k}: '{v}' is not a number")))
        };
        let int = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| Error::Parse(format!("{k}: '{v}' is not a count")))
        };
        match k.as_str() {
            "tol_tight" => self.tol_tight = num(v)?,
            "tol_hard" => self.tol_hard = num(v)?,
            "grid" => self.grid = v.parse()?,
            "z_grid" => self.z_grid = v.parse()?,
            "max_order" => self.max_order = int(v)?,
            "threads" => self.threads = int(v)?,
            "format" => self.format = v.parse()?,
            "stable" => self.stable = parse_bool(&k, v)?,
            "extended_domain" => self.extended_domain = parse_bool(&k, v)?,
            "outside_proven_region" => self.outside_proven_region = parse_bool(&k, v)?,
            "allow_inconclusive" => self.allow_inconclusive = parse_bool(&k, v)?,
            _ => return Err(Error::Parse(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines over `self`. Blank lines and `#` comments
    /// are skipped.
    pub fn merge_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v)
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        }
        self.validate()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = RunConfig::default();
        c.merge_text(text)?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (k, t) in [("tol_tight", self.tol_tight), ("tol_hard", self.tol_hard)] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Param(format!("{k} = {t} must be positive")));
            }
        }
        self.grid.validate()?;
        self.z_grid.validate()?;
        if self.max_order > 10 {
            return Err(Error::Param(format!("max_order = {} exceeds 10", self.max_order)));
        }
        if self.threads == 0 {
            return Err(Error::Param("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// The configuration as `key = value` text that [`RunConfig::from_text`]
    /// reads back.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| s.push_str(&format!("{k} = {v}\n"));
        put("tol_tight", format!("{:e}", self.tol_tight));
        put("tol_hard", format!("{:e}", self.tol_hard));
        put("grid", self.grid.to_string());
        put("z_grid", self.z_grid.to_string());
        put("max_order", self.max_order.to_string());
        put("threads", self.threads.to_string());
        put(
            "format",
            if self.format == OutputFormat::Json {
                "json"
            } else {
                "csv"
            }
            .into(),
        );
        put("stable", self.stable.to_string());
        put("extended_domain", self.extended_domain.to_string());
        put("outside_proven_region", self.outside_proven_region.to_string());
        put("allow_inconclusive", self.allow_inconclusive.to_string());
        s
    }
}
