//! Run configuration shared by the subcommands, with a flat `key = value`
//! file format whose keys mirror the command-line flags.

use std::fmt::Write as _;
use std::path::PathBuf;

use dsh_core::huygens::{ScanTolerances, Split};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::mass::{lattice_mass, parse_mass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SplitArg {
    First,
    Second,
}

impl From<SplitArg> for Split {
    fn from(s: SplitArg) -> Self {
        match s {
            SplitArg::First => Split::First,
            SplitArg::Second => Split::Second,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "H")]
    pub h: f64,
    /// Mass expression, e.g. `iH/4` or `1+0.5i`.
    pub m: String,
    /// Lattice index; overrides `m` when present.
    pub ell: Option<i32>,
    pub eps: f64,
    pub amp: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub split: SplitArg,
    pub huygens_tol: f64,
    pub rate_tol: f64,
    pub noise_floor: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let tol = ScanTolerances::default();
        Self {
            h: 1.0,
            m: "0".into(),
            ell: None,
            eps: 0.1,
            amp: 1.0,
            t_min: 3.0,
            t_max: 12.0,
            t_steps: 20,
            split: SplitArg::First,
            huygens_tol: tol.huygens_tol,
            rate_tol: tol.rate_tol,
            noise_floor: tol.noise_floor,
            output: None,
            format: Format::Csv,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::Parse(format!("invalid value '{v}' for '{key}'")))
}

impl RunConfig {
    pub fn mass(&self) -> Result<Complex64, CliError> {
        match self.ell {
            Some(l) => Ok(lattice_mass(l, self.h)),
            None => parse_mass(&self.m, self.h),
        }
    }

    pub fn tolerances(&self) -> ScanTolerances {
        ScanTolerances {
            huygens_tol: self.huygens_tol,
            rate_tol: self.rate_tol,
            noise_floor: self.noise_floor,
        }
    }

    /// Sets one key; keys match the long flag names with `-` or `_`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let k = key.trim().replace('-', "_");
        let v = value.trim();
        match k.as_str() {
            "H" => self.h = parse_num(key, v)?,
            "m" => self.m = v.to_string(),
            "ell" => self.ell = if v.is_empty() { None } else { Some(parse_num(key, v)?) },
            "eps" => self.eps = parse_num(key, v)?,
            "amp" => self.amp = parse_num(key, v)?,
            "t_min" => self.t_min = parse_num(key, v)?,
            "t_max" => self.t_max = parse_num(key, v)?,
            "t_steps" => self.t_steps = parse_num(key, v)?,
            "split" => {
                self.split = match v {
                    "first" => SplitArg::First,
                    "second" => SplitArg::Second,
                    _ => return Err(CliError::Parse(format!("split must be first or second, got '{v}'"))),
                }
            }
            "huygens_tol" => self.huygens_tol = parse_num(key, v)?,
            "rate_tol" => self.rate_tol = parse_num(key, v)?,
            "noise_floor" => self.noise_floor = parse_num(key, v)?,
            "output" => self.output = if v.is_empty() { None } else { Some(PathBuf::from(v)) },
            "format" => {
                self.format = match v {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(CliError::Parse(format!("format must be csv or json, got '{v}'"))),
                }
            }
            _ => return Err(CliError::Parse(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    /// Applies a `key = value` document on top of `self`. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn apply_kv(&mut self, text: &str) -> Result<(), CliError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("line {}: expected key = value", n + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_kv(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        cfg.apply_kv(text)?;
        Ok(cfg)
    }

    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let split = match self.split {
            SplitArg::First => "first",
            SplitArg::Second => "second",
        };
        let format = match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let _ = writeln!(s, "H = {}", self.h);
        let _ = writeln!(s, "m = {}", self.m);
        if let Some(l) = self.ell {
            let _ = writeln!(s, "ell = {l}");
        }
        let _ = writeln!(s, "eps = {}", self.eps);
        let _ = writeln!(s, "amp = {}", self.amp);
        let _ = writeln!(s, "t_min = {}", self.t_min);
        let _ = writeln!(s, "t_max = {}", self.t_max);
        let _ = writeln!(s, "t_steps = {}", self.t_steps);
        let _ = writeln!(s, "split = {split}");
        let _ = writeln!(s, "huygens_tol = {}", self.huygens_tol);
        let _ = writeln!(s, "rate_tol = {}", self.rate_tol);
        let _ = writeln!(s, "noise_floor = {}", self.noise_floor);
        if let Some(p) = &self.output {
            let _ = writeln!(s, "output = {}", p.display());
        }
        let _ = writeln!(s, "format = {format}");
        s
    }

    /// Parses either a JSON object (fields as in [`RunConfig`], all optional)
    /// or a `key = value` document.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("config: {e}")))
        } else {
            Self::from_kv(text)
        }
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
