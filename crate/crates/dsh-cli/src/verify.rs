//! Invariant suites behind `dsh verify`.

use std::f64::consts::PI;

use dsh_core::huygens::{tail_scan, time_grid, Split, Verdict};
use dsh_core::kernels::{
    combo_asymptote, dirac_combo_minus, dirac_combo_plus, kernel_k1, script_f, validated_coefficient,
    CosmologyParams, MassClass,
};
use dsh_core::specfun::{digamma, gamma, hyp2f1, hyp2f1_near_one, hyp2f1_series, Hyp2F1Params};
use dsh_core::wave::RadialBump;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Specfun,
    Kernels,
    Asymptotics,
    Theorem,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Specfun => "specfun",
            Self::Kernels => "kernels",
            Self::Asymptotics => "asymptotics",
            Self::Theorem => "theorem",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub module: &'static str,
    pub invariant: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub suite: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check(module: &'static str, invariant: impl Into<String>, passed: bool, detail: String) -> Check {
    Check {
        module,
        invariant: invariant.into(),
        passed,
        detail,
    }
}

fn failed_eval(module: &'static str, invariant: &str, e: impl std::fmt::Display) -> Check {
    check(module, invariant, false, format!("evaluation failed: {e}"))
}

fn specfun_suite() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut draws = 0;
    let mut err = None;
    while draws < 100 && err.is_none() {
        let mut cx = |lo: f64, hi: f64| c(rng.gen_range(lo..hi), rng.gen_range(-1.0..1.0));
        let (a, b, cc) = (cx(-1.5, 2.5), cx(-1.5, 2.5), cx(0.2, 3.0));
        let d = cc - a - b;
        if (d - c(d.re.round(), 0.0)).norm() < 0.1 {
            continue;
        }
        let z = c(rng.gen_range(0.4..0.5), 0.0);
        let res = Hyp2F1Params::new(a, b, cc)
            .and_then(|p| Ok((hyp2f1_series(p, z)?, hyp2f1_near_one(p, z)?)));
        match res {
            Ok((s, n)) => worst = worst.max((s - n).norm() / s.norm()),
            Err(e) => err = Some(e),
        }
        draws += 1;
    }
    out.push(match err {
        Some(e) => failed_eval("specfun", "overlap consistency", e),
        None => check("specfun", "overlap consistency", worst < 1e-10, format!("max relative difference {worst:.2e} over 100 draws")),
    });

    let ident = (-6..=-1).try_fold(0.0f64, |acc, n| {
        let nf = n as f64;
        let f2 = hyp2f1(Hyp2F1Params::real(nf + 1.0, nf + 1.0, 2.0)?, c(1.0, 0.0))?;
        let f1 = hyp2f1(Hyp2F1Params::real(nf, nf, 1.0)?, c(1.0, 0.0))?;
        Ok::<f64, dsh_core::DshError>(acc.max((2.0 * nf * f2 + f1).norm()))
    });
    out.push(match ident {
        Ok(v) => check("specfun", "terminating identity 2nF(n+1,n+1;2;1)+F(n,n;1;1)=0", v < 1e-12, format!("max residual {v:.1e}")),
        Err(e) => failed_eval("specfun", "terminating identity", e),
    });

    out.push(match Hyp2F1Params::real(0.5, 0.5, 2.0).and_then(|p| hyp2f1(p, c(1.0, 0.0))) {
        Ok(v) => {
            let d = (v.re - 4.0 / PI).abs() + v.im.abs();
            check("specfun", "F(1/2,1/2;2;1) = 4/pi", d < 1e-12, format!("difference {d:.1e}"))
        }
        Err(e) => failed_eval("specfun", "F(1/2,1/2;2;1) = 4/pi", e),
    });

    let refl = [c(0.3, 0.7), c(-2.4, 1.1), c(3.7, -2.0), c(-0.5, 0.25)]
        .iter()
        .try_fold(0.0f64, |acc, &z| {
            let v = gamma(z)? * gamma(1.0 - z)? * (PI * z).sin() / PI;
            Ok::<f64, dsh_core::DshError>(acc.max((v - 1.0).norm()))
        });
    out.push(match refl {
        Ok(v) => check("specfun", "gamma reflection", v < 1e-12, format!("max residual {v:.1e}")),
        Err(e) => failed_eval("specfun", "gamma reflection", e),
    });

    let rec = [c(0.3, 0.7), c(-2.4, 1.1), c(12.5, -3.0)].iter().try_fold(0.0f64, |acc, &z| {
        let v = digamma(z + 1.0)? - digamma(z)? - 1.0 / z;
        Ok::<f64, dsh_core::DshError>(acc.max(v.norm()))
    });
    out.push(match rec {
        Ok(v) => check("specfun", "digamma recurrence", v < 1e-12, format!("max residual {v:.1e}")),
        Err(e) => failed_eval("specfun", "digamma recurrence", e),
    });
    out
}

fn kernels_suite(h: f64) -> Vec<Check> {
    let mut out = Vec::new();
    let cp0 = match CosmologyParams::new(h, c(0.0, 0.0)) {
        Ok(cp) => cp,
        Err(e) => return vec![failed_eval("kernels", "parameters", e)],
    };
    let collapse = (|| {
        let mut worst = 0.0f64;
        for i in 0..20 {
            for j in 0..20 {
                let (r, t) = (0.04 * i as f64 / h, 0.1 * j as f64 / h);
                let tau = (-h * t).exp();
                let a2 = (h * r).powi(2);
                let half = 0.5 * (0.5 * h * t).exp();
                let three = 0.25 * (1.5 * h * t).exp() * (1.0 + tau * tau - a2);
                worst = worst
                    .max((kernel_k1(r, t, c(0.5 * h, 0.0), &cp0)? - half).norm())
                    .max((kernel_k1(r, t, c(-0.5 * h, 0.0), &cp0)? - half).norm())
                    .max((kernel_k1(r, t, c(1.5 * h, 0.0), &cp0)? - three).norm());
            }
        }
        Ok::<f64, dsh_core::DshError>(worst)
    })();
    out.push(match collapse {
        Ok(v) => check("kernels", "K1 closed forms at M = -H/2, H/2, 3H/2", v < 1e-11, format!("max difference {v:.1e}")),
        Err(e) => failed_eval("kernels", "K1 closed forms", e),
    });

    let origin = kernel_k1(0.0, 0.0, c(0.3, 0.2), &cp0);
    out.push(match origin {
        Ok(v) => check("kernels", "K1 at the origin event is 1/2", (v - 0.5).norm() < 1e-15, format!("value {v}")),
        Err(e) => failed_eval("kernels", "K1 at the origin event", e),
    });

    let fd = (|| {
        let mut worst = 0.0f64;
        for m in [c(0.3, 0.0), c(1.0, 0.5), c(0.0, -0.7)] {
            let cp = CosmologyParams::new(h, m * h)?;
            for i in 0..10 {
                for j in 0..10 {
                    let (r, t) = (0.05 * i as f64 / h, (0.1 + 0.3 * j as f64) / h);
                    let k = |t: f64| kernel_k1(r, t, cp.m_plus(), &cp);
                    let d = |s: f64| -> dsh_core::Result<Complex64> { Ok((k(t + s)? - k(t - s)?) / (2.0 * s)) };
                    let s = 1e-3 / h;
                    let dk = (4.0 * d(s / 2.0)? - d(s)?) / 3.0;
                    let lhs = dk - (0.5 * h + I * cp.m) * k(t)?;
                    let rhs = dirac_combo_plus(r, t, &cp)?;
                    worst = worst.max((lhs - rhs).norm() / rhs.norm());
                }
            }
        }
        Ok::<f64, dsh_core::DshError>(worst)
    })();
    out.push(match fd {
        Ok(v) => check("kernels", "closed form of (d/dt - H/2 - im)K1(M+)", v < 1e-6, format!("max relative difference {v:.1e}")),
        Err(e) => failed_eval("kernels", "closed form of the time combination", e),
    });

    let mirror = (|| {
        let mut worst = 0.0f64;
        for m in [c(0.3, 0.0), c(1.0, 0.5), c(-0.4, 1.7)] {
            let cp = CosmologyParams::new(h, m * h)?;
            for (r, t) in [(0.0, 0.5), (0.2, 1.0), (0.4, 3.0)] {
                let (r, t) = (r / h, t / h);
                let a = dirac_combo_minus(r, t, &cp)?;
                let b = dirac_combo_plus(r, t, &cp.mirrored())?;
                worst = worst.max((a - b).norm() / b.norm());
            }
        }
        Ok::<f64, dsh_core::DshError>(worst)
    })();
    out.push(match mirror {
        Ok(v) => check("kernels", "minus combination equals plus combination at -m", v < 1e-12, format!("max relative difference {v:.1e}")),
        Err(e) => failed_eval("kernels", "minus combination mirror", e),
    });

    let at_origin = (|| {
        let mut worst = 0.0f64;
        for m in [c(0.3, 0.0), c(1.0, 0.5), c(0.0, -0.7)] {
            let cp = CosmologyParams::new(h, m)?;
            worst = worst.max((dirac_combo_plus(0.0, 0.0, &cp)? + I * m / 2.0).norm());
        }
        Ok::<f64, dsh_core::DshError>(worst)
    })();
    out.push(match at_origin {
        Ok(v) => check("kernels", "combination at the origin event is -im/2", v < 1e-14, format!("max difference {v:.1e}")),
        Err(e) => failed_eval("kernels", "combination at the origin event", e),
    });
    out
}

fn leading_constant(ell: i32) -> dsh_core::Result<f64> {
    let alpha = (ell as f64 + 1.0) / 2.0;
    let at = |t: f64| -> dsh_core::Result<f64> {
        let tau = (-t).exp();
        let f = script_f(tau, 0.0, ell)?;
        Ok(if alpha >= 0.5 { f * tau.powf(2.0 * alpha) } else { f / tau })
    };
    let (a, b) = (at(14.0)?, at(15.0)?);
    let q = (-1.0f64).exp();
    Ok((b - q * a) / (1.0 - q))
}

fn asymptotics_suite(h: f64) -> Vec<Check> {
    let mut out = Vec::new();
    let masses = [
        ("iH/2", 0.5 * I),
        ("-iH/2", -0.5 * I),
        ("2iH", 2.0 * I),
        ("3iH", 3.0 * I),
        ("3iH/2", 1.5 * I),
        ("-3iH/2", -1.5 * I),
        ("-2iH", -2.0 * I),
        ("-5iH/2", -2.5 * I),
        ("-3iH", -3.0 * I),
        ("0.5H", c(0.5, 0.0)),
        ("(1+i)H", c(1.0, 1.0)),
        ("0.3iH", 0.3 * I),
        ("iH/4", 0.25 * I),
    ];
    for (name, m) in masses {
        let res = (|| {
            let cp = CosmologyParams::new(h, m * h)?;
            let cls = MassClass::classify(&cp);
            let mut worst = 0.0f64;
            for r in [0.0, 0.2, 0.4] {
                let (r, t) = (r * 0.5f64.min(0.5 / h) / 0.5, 14.0 / h);
                let q = dirac_combo_plus(r, t, &cp)? / combo_asymptote(cls, &cp, r, t)?;
                worst = worst.max((q - 1.0).norm());
            }
            Ok::<(MassClass, f64), dsh_core::DshError>((cls, worst))
        })();
        let label = format!("leading asymptote for m = {name}");
        out.push(match res {
            Ok((cls, v)) => check("asymptotics", label, v < 1e-4, format!("{}: max |ratio-1| at Ht=14 {v:.1e}", cls.name())),
            Err(e) => failed_eval("asymptotics", &label, e),
        });
    }
    for ell in [-9, -8, -7, -6, -5, -4, 0, 2, 3, 4, 5] {
        let cls = MassClass::from_ell(ell);
        let label = format!("leading constant for {}", cls.name());
        let res = (|| {
            let cp = CosmologyParams::new(1.0, c(0.0, (ell as f64 + 1.0) / 2.0))?;
            let want = validated_coefficient(cls, &cp).re;
            Ok::<(f64, f64), dsh_core::DshError>((leading_constant(ell)?, want))
        })();
        out.push(match res {
            Ok((got, want)) => check(
                "asymptotics",
                label,
                (got - want).abs() < 1e-6 * want.abs(),
                format!("direct {got:.10}, formula {want:.10}"),
            ),
            Err(e) => failed_eval("asymptotics", &label, e),
        });
    }
    out
}

/// Tail-free pairings as stated: m = 0 with either split, iH with the first
/// and −iH with the second.
fn stated_huygensian(m: Complex64, split: Split) -> bool {
    m.norm() == 0.0 || (m == I && split == Split::First) || (m == -I && split == Split::Second)
}

fn theorem_suite(cfg: &RunConfig) -> Vec<Check> {
    let masses = [
        ("0", c(0.0, 0.0)),
        ("iH", I),
        ("-iH", -I),
        ("iH/2", 0.5 * I),
        ("-iH/2", -0.5 * I),
        ("2iH", 2.0 * I),
        ("-2iH", -2.0 * I),
        ("0.5H", c(0.5, 0.0)),
        ("0.3iH", 0.3 * I),
        ("(1+i)H", c(1.0, 1.0)),
    ];
    let grid = time_grid(cfg.t_min, cfg.t_max, cfg.t_steps);
    let mut out = Vec::new();
    for (name, m) in masses {
        for split in [Split::First, Split::Second] {
            let label = format!("{name} / {}", if split == Split::First { "first" } else { "second" });
            let res = (|| {
                let cp = CosmologyParams::new(cfg.h, m * cfg.h)?;
                let bump = RadialBump::new(cfg.eps, cfg.amp)?;
                tail_scan(split, &bump, &cp, &grid, cfg.tolerances())
            })();
            out.push(match res {
                Ok(rep) => {
                    let expect = stated_huygensian(m, split);
                    let got = rep.verdict == Verdict::Huygensian;
                    let ok = expect == got && rep.verdict != Verdict::NonHuygensianUnmatched;
                    let want = if expect { "HUYGENSIAN" } else { "NON_HUYGENSIAN_MATCHED" };
                    check(
                        "huygens",
                        label,
                        ok,
                        format!("expected {want}, got {} (max |tail| {:.1e})", rep.verdict.label(), rep.max_abs_tail()),
                    )
                }
                Err(e) => failed_eval("huygens", &label, e),
            });
        }
    }
    out
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Summary {
    let checks = match suite {
        Suite::Specfun => specfun_suite(),
        Suite::Kernels => kernels_suite(cfg.h),
        Suite::Asymptotics => asymptotics_suite(cfg.h),
        Suite::Theorem => theorem_suite(cfg),
    };
    let passed = checks.iter().filter(|c| c.passed).count();
    Summary {
        suite: suite.name(),
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

pub fn render_table(s: &Summary) -> String {
    let width = s.checks.iter().map(|c| c.invariant.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in &s.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag}  {:<12} {:<width$}  {}\n", c.module, c.invariant, c.detail));
    }
    out.push_str(&format!("suite {}: {} passed, {} failed\n", s.suite, s.passed, s.failed));
    out
}

/// Exit status 5 names the first failing module and invariant.
pub fn outcome(s: &Summary) -> Result<(), CliError> {
    match s.checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(CliError::Invariant(format!(
            "{} / {} ({} of {} checks failed)",
            c.module,
            c.invariant,
            s.failed,
            s.checks.len()
        ))),
    }
}
