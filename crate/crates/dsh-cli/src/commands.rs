//! Kernel evaluation and tail scans.

use std::time::Instant;

use dsh_core::huygens::{tail_scan, time_grid, TailReport};
use dsh_core::kernels::{
    dirac_combo_minus, dirac_combo_plus, kernel_e, kernel_k0, kernel_k1, CosmologyParams,
};
use dsh_core::wave::RadialBump;
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::mass::{lattice_mass, parse_mass};
use crate::output::{complex_csv, complex_json, emit, fmt_f64, JsonComplex, Metadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KernelKind {
    #[value(name = "E")]
    E,
    #[value(name = "K0")]
    K0,
    #[value(name = "K1")]
    K1,
    #[value(name = "comboPlus")]
    ComboPlus,
    #[value(name = "comboMinus")]
    ComboMinus,
}

#[derive(Debug, Clone)]
pub struct EvalRequest {
    pub kernel: KernelKind,
    pub r: f64,
    pub t: f64,
    pub t0: f64,
    pub h: f64,
    /// Klein-Gordon mass expression.
    pub big_m: Option<String>,
    /// Dirac mass expression.
    pub m: Option<String>,
    pub ell: Option<i32>,
    pub format: Format,
}

impl EvalRequest {
    fn dirac_mass(&self) -> Result<Option<Complex64>, CliError> {
        match (self.ell, &self.m) {
            (Some(l), _) => Ok(Some(lattice_mass(l, self.h))),
            (None, Some(m)) => parse_mass(m, self.h).map(Some),
            (None, None) => Ok(None),
        }
    }
}

/// Evaluates one kernel value. For E, K₀ and K₁ the Klein-Gordon mass is
/// `--M`, or M₊ = H/2 + im when only the Dirac mass is given.
pub fn eval_kernel(req: &EvalRequest) -> Result<Complex64, CliError> {
    let dirac = req.dirac_mass()?;
    let cp = CosmologyParams::new(req.h, dirac.unwrap_or_default())?;
    let kg_mass = || -> Result<Complex64, CliError> {
        match (&req.big_m, dirac) {
            (Some(expr), _) => parse_mass(expr, req.h),
            (None, Some(_)) => Ok(cp.m_plus()),
            (None, None) => Err(CliError::Parse("one of --M, --m or --ell is required".into())),
        }
    };
    let need_dirac = || -> Result<(), CliError> {
        if dirac.is_none() || req.big_m.is_some() {
            return Err(CliError::Parse(
                "combination kernels take the Dirac mass via --m or --ell, not --M".into(),
            ));
        }
        Ok(())
    };
    Ok(match req.kernel {
        KernelKind::E => kernel_e(req.r, req.t, req.t0, kg_mass()?, &cp)?,
        KernelKind::K0 => kernel_k0(req.r, req.t, kg_mass()?, &cp)?,
        KernelKind::K1 => kernel_k1(req.r, req.t, kg_mass()?, &cp)?,
        KernelKind::ComboPlus => {
            need_dirac()?;
            dirac_combo_plus(req.r, req.t, &cp)?
        }
        KernelKind::ComboMinus => {
            need_dirac()?;
            dirac_combo_minus(req.r, req.t, &cp)?
        }
    })
}

pub fn format_value(z: Complex64, format: Format) -> String {
    match format {
        Format::Csv => complex_csv(z),
        Format::Json => complex_json(z),
    }
}

pub fn run_scan(cfg: &RunConfig) -> Result<TailReport, CliError> {
    if cfg.t_steps == 0 || !(cfg.t_max >= cfg.t_min) {
        return Err(CliError::Parse(format!(
            "need t_steps >= 1 and t_max >= t_min, got {} steps on [{}, {}]",
            cfg.t_steps, cfg.t_min, cfg.t_max
        )));
    }
    let cp = CosmologyParams::new(cfg.h, cfg.mass()?)?;
    let bump = RadialBump::new(cfg.eps, cfg.amp)?;
    let grid = time_grid(cfg.t_min, cfg.t_max, cfg.t_steps);
    Ok(tail_scan(cfg.split.into(), &bump, &cp, &grid, cfg.tolerances())?)
}

pub const SCAN_COLUMNS: [&str; 7] = [
    "t",
    "re_tail",
    "im_tail",
    "abs_tail",
    "re_predicted",
    "im_predicted",
    "abs_ratio_minus_1",
];

pub fn report_csv(rep: &TailReport) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(SCAN_COLUMNS)?;
    let dev = rep.deviations();
    for i in 0..rep.times.len() {
        let (tail, pred) = (rep.tails[i], rep.predicted[i]);
        w.write_record([
            fmt_f64(rep.times[i]),
            fmt_f64(tail.re),
            fmt_f64(tail.im),
            fmt_f64(tail.norm()),
            fmt_f64(pred.re),
            fmt_f64(pred.im),
            fmt_f64(dev[i]),
        ])?;
    }
    let mut bytes = w.into_inner().map_err(|e| CliError::Numerics(e.to_string()))?;
    let coef = |c: Option<Complex64>| c.map(complex_csv).unwrap_or_else(|| "none".into());
    bytes.extend_from_slice(
        format!(
            "# mass_class={}\n# prediction_class={}\n# reference_coefficient={}\n# fitted_coefficient={}\n# verdict={}\n",
            rep.mass_class.name(),
            rep.prediction_class.name(),
            coef(rep.reference_coefficient),
            coef(rep.fitted_coefficient),
            rep.verdict.label()
        )
        .as_bytes(),
    );
    Ok(bytes)
}

#[derive(Serialize)]
struct JsonRow {
    t: f64,
    tail: JsonComplex,
    predicted: JsonComplex,
    abs_ratio_minus_1: Option<f64>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    mass_class: String,
    prediction_class: String,
    split: &'static str,
    verdict: &'static str,
    max_abs_tail: f64,
    reference_coefficient: Option<JsonComplex>,
    fitted_coefficient: Option<JsonComplex>,
    config: &'a RunConfig,
    rows: Vec<JsonRow>,
}

pub fn report_json(rep: &TailReport, cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let dev = rep.deviations();
    let rows = (0..rep.times.len())
        .map(|i| JsonRow {
            t: rep.times[i],
            tail: rep.tails[i].into(),
            predicted: rep.predicted[i].into(),
            abs_ratio_minus_1: dev[i].is_finite().then_some(dev[i]),
        })
        .collect();
    let doc = JsonReport {
        mass_class: rep.mass_class.name(),
        prediction_class: rep.prediction_class.name(),
        split: match rep.split {
            dsh_core::huygens::Split::First => "first",
            dsh_core::huygens::Split::Second => "second",
        },
        verdict: rep.verdict.label(),
        max_abs_tail: rep.max_abs_tail(),
        reference_coefficient: rep.reference_coefficient.map(Into::into),
        fitted_coefficient: rep.fitted_coefficient.map(Into::into),
        config: cfg,
        rows,
    };
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Runs a scan and writes the report; UNMATCHED verdicts become exit code 4.
pub fn cmd_tail_scan(cfg: &RunConfig) -> Result<(), CliError> {
    let start = Instant::now();
    let rep = run_scan(cfg)?;
    let bytes = match cfg.format {
        Format::Csv => report_csv(&rep)?,
        Format::Json => report_json(&rep, cfg)?,
    };
    let meta = Metadata::new("tail-scan", cfg, start.elapsed().as_secs_f64());
    emit(cfg.output.as_deref(), &bytes, &meta)?;
    if rep.verdict == dsh_core::huygens::Verdict::NonHuygensianUnmatched {
        return Err(CliError::Unmatched(rep.verdict.label().into()));
    }
    Ok(())
}
