//! Tail scans at the spatial origin and Huygens verdicts.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{DshError, Result};
use crate::kernels::asymptotics_internal::{class_weight, combo_leading};
use crate::kernels::{reference_coefficient, phi_dist, validated_coefficient, CosmologyParams, MassClass};
use crate::quad::{integrate, integrate_ok, QuadConfig};
use crate::solver::{dirac_tail_first, dirac_tail_second};
use crate::wave::{RadialBump, RadialProfile};

/// Data split probed by a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Split {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Huygensian,
    NonHuygensianMatched,
    NonHuygensianUnmatched,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Huygensian => "HUYGENSIAN",
            Self::NonHuygensianMatched => "NON_HUYGENSIAN_MATCHED",
            Self::NonHuygensianUnmatched => "NON_HUYGENSIAN_UNMATCHED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanTolerances {
    pub huygens_tol: f64,
    pub rate_tol: f64,
    /// Deviations below this count as converged when checking monotonicity.
    pub noise_floor: f64,
}

impl Default for ScanTolerances {
    fn default() -> Self {
        Self {
            huygens_tol: 1e-8,
            rate_tol: 0.05,
            noise_floor: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub mass_class: MassClass,
    /// Class whose asymptotics predict this split (the class of −m for the
    /// second split).
    pub prediction_class: MassClass,
    pub split: Split,
    pub times: Vec<f64>,
    pub tails: Vec<Complex64>,
    pub predicted: Vec<Complex64>,
    pub ratios: Vec<Complex64>,
    pub verdict: Verdict,
    pub tolerances: ScanTolerances,
    pub reference_coefficient: Option<Complex64>,
    pub fitted_coefficient: Option<Complex64>,
}

impl TailReport {
    pub fn max_abs_tail(&self) -> f64 {
        self.tails.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn deviations(&self) -> Vec<f64> {
        self.ratios.iter().map(|r| (r - 1.0).norm()).collect()
    }
}

pub fn classify_mass(cp: &CosmologyParams) -> MassClass {
    MassClass::classify(cp)
}

/// Evenly spaced grid of `n` points on [t_min, t_max].
pub fn time_grid(t_min: f64, t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![t_min],
        _ => (0..n)
            .map(|i| t_min + (t_max - t_min) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Leading-order prediction of the origin tail: 2e^{−Ht}∫(∂_r rΦ)·(leading
/// combination) dr.
pub fn predicted_tail(split: Split, phi: &RadialBump, cp: &CosmologyParams, t: f64) -> Result<Complex64> {
    let eff = match split {
        Split::First => *cp,
        Split::Second => cp.mirrored(),
    };
    let cls = MassClass::classify(&eff);
    if cls.is_huygensian() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let integral = integrate(
        "predicted tail",
        |r| Ok((phi.value(r) + r * phi.derivative(r)) * combo_leading(cls, &eff, r, t)?),
        0.0,
        phi.eps,
        QuadConfig::cancelling(),
    )?;
    Ok(2.0 * (-cp.h * t).exp() * integral)
}

pub fn tail_scan(split: Split, phi: &RadialBump, cp: &CosmologyParams, t_grid: &[f64], tol: ScanTolerances) -> Result<TailReport> {
    for &t in t_grid {
        if phi_dist(t, cp.h) <= phi.eps {
            return Err(DshError::Precondition(format!(
                "phi({t}) = {} does not exceed eps = {}",
                phi_dist(t, cp.h),
                phi.eps
            )));
        }
    }
    let rows: Vec<Result<(Complex64, Complex64)>> = t_grid
        .par_iter()
        .map(|&t| {
            let tail = match split {
                Split::First => dirac_tail_first(phi, cp, t)?,
                Split::Second => dirac_tail_second(phi, cp, t)?,
            };
            Ok((tail, predicted_tail(split, phi, cp, t)?))
        })
        .collect();
    let mut tails = Vec::with_capacity(rows.len());
    let mut predicted = Vec::with_capacity(rows.len());
    for row in rows {
        let (a, b) = row?;
        tails.push(a);
        predicted.push(b);
    }
    let ratios: Vec<Complex64> = tails
        .iter()
        .zip(&predicted)
        .map(|(t, p)| {
            if p.norm() == 0.0 {
                Complex64::new(f64::NAN, f64::NAN)
            } else {
                t / p
            }
        })
        .collect();
    let eff = match split {
        Split::First => *cp,
        Split::Second => cp.mirrored(),
    };
    let prediction_class = MassClass::classify(&eff);
    let mut report = TailReport {
        mass_class: MassClass::classify(cp),
        prediction_class,
        split,
        times: t_grid.to_vec(),
        tails,
        predicted,
        ratios,
        verdict: Verdict::NonHuygensianUnmatched,
        tolerances: tol,
        reference_coefficient: reference_coefficient(prediction_class, &eff),
        fitted_coefficient: None,
    };
    report.verdict = verdict(&report);
    if let Some(last) = report.ratios.last().filter(|r| r.re.is_finite()) {
        report.fitted_coefficient = Some(validated_coefficient(prediction_class, &eff) * last);
    }
    Ok(report)
}

fn verdict(rep: &TailReport) -> Verdict {
    let tol = &rep.tolerances;
    if rep.max_abs_tail() < tol.huygens_tol {
        return Verdict::Huygensian;
    }
    let dev = rep.deviations();
    let n = dev.len();
    if n == 0 || !dev[n - 1].is_finite() || dev[n - 1] >= tol.rate_tol {
        return Verdict::NonHuygensianUnmatched;
    }
    let tail = &dev[n.saturating_sub(5)..];
    let converging = tail
        .windows(2)
        .all(|w| w[1] <= w[0] || w[1] < tol.noise_floor);
    if converging {
        Verdict::NonHuygensianMatched
    } else {
        Verdict::NonHuygensianUnmatched
    }
}

/// |∫(∂_r rΦ) w(r) dr| with the class-specific weight w.
pub fn nondegeneracy_check(phi: &RadialBump, cls: MassClass, cp: &CosmologyParams) -> f64 {
    integrate_ok(
        "nondegeneracy",
        |r| (phi.value(r) + r * phi.derivative(r)) * class_weight(cls, cp, r),
        0.0,
        phi.eps,
        QuadConfig::tight(),
    )
    .map(|v: Complex64| v.norm())
    .unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = time_grid(3.0, 12.0, 20);
        assert_eq!(g.len(), 20);
        assert_eq!(g[0], 3.0);
        assert!((g[19] - 12.0).abs() < 1e-14);
    }

    #[test]
    fn classification_examples() {
        let c = |re: f64, im: f64| CosmologyParams::new(1.0, Complex64::new(re, im)).unwrap();
        assert_eq!(classify_mass(&c(0.0, 0.0)), MassClass::Zero);
        assert_eq!(classify_mass(&c(0.0, 1.0)), MassClass::PlusIh);
        assert_eq!(classify_mass(&c(0.3, 0.1)), MassClass::Generic);
    }
}
