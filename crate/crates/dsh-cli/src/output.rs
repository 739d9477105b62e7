//! Number formatting and report writers. Floats use the shortest
//! representation that round-trips, with −0 printed as 0.

use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;

/// Plain decimal in [1e-5, 1e16), exponent form outside it.
pub fn fmt_f64(x: f64) -> String {
    let x = x + 0.0;
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self {
            re: z.re + 0.0,
            im: z.im + 0.0,
        }
    }
}

pub fn complex_csv(z: Complex64) -> String {
    format!("{},{}", fmt_f64(z.re), fmt_f64(z.im))
}

pub fn complex_json(z: Complex64) -> String {
    serde_json::to_string(&JsonComplex::from(z)).expect("finite floats serialize")
}

/// Run metadata kept out of the data file so that data output is
/// byte-identical across runs.
#[derive(Debug, Serialize)]
pub struct Metadata<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub unix_time: u64,
    pub elapsed_seconds: f64,
    pub threads: usize,
}

impl<'a> Metadata<'a> {
    pub fn new(command: &'a str, config: &'a RunConfig, elapsed_seconds: f64) -> Self {
        Self {
            tool: "dsh",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            unix_time: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            elapsed_seconds,
            threads: rayon::current_num_threads(),
        }
    }
}

/// Writes `bytes` to `path`, or to stdout when no path is given. With a path,
/// metadata goes to `<path>.meta.json`.
pub fn emit(path: Option<&Path>, bytes: &[u8], meta: &Metadata) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, bytes)?;
            let mut side = p.as_os_str().to_owned();
            side.push(".meta.json");
            std::fs::write(side, serde_json::to_vec_pretty(meta)?)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}
