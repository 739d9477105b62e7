use num_complex::Complex64;

use super::gamma::{digamma, is_nonpositive_integer, rgamma};
use crate::error::{DshError, Result};

/// Absolute tolerance for deciding that c − a − b is an integer.
pub const INTEGER_TOL: f64 = 1e-9;

const NEAR_ONE_RADIUS: f64 = 0.6;
const SERIES_SWITCH: f64 = 0.5;
const INNER_TOL: f64 = 1e-13;

/// Truncation controls for the Gauss series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub radius: f64,
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            radius: 0.75,
            tol: 1e-14,
            max_terms: 1_000_000,
        }
    }
}

/// Which connection formula at z = 1 applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyp2F1Class {
    Generic,
    /// c = a + b + m, m ≥ 0
    CEqAbPlusM(u32),
    /// c = a + b − m, m ≥ 1
    CEqAbMinusM(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl Hyp2F1Params {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        if is_nonpositive_integer(c) {
            return Err(DshError::Parameter(format!(
                "c = {c} is a nonpositive integer"
            )));
        }
        Ok(Self { a, b, c })
    }

    /// Real-parameter shorthand.
    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn class(&self) -> Hyp2F1Class {
        let d = self.c - self.a - self.b;
        let n = d.re.round();
        if d.im.abs() < INTEGER_TOL && (d.re - n).abs() < INTEGER_TOL {
            if n >= 0.0 {
                Hyp2F1Class::CEqAbPlusM(n as u32)
            } else {
                Hyp2F1Class::CEqAbMinusM((-n) as u32)
            }
        } else {
            Hyp2F1Class::Generic
        }
    }

    /// Degree of the polynomial when a or b is a nonpositive integer.
    fn terminating_degree(&self) -> Option<u32> {
        [self.a, self.b]
            .iter()
            .filter(|x| is_nonpositive_integer(**x))
            .map(|x| (-x.re) as u32)
            .min()
    }
}

/// Gauss series with default controls.
pub fn hyp2f1_series(p: Hyp2F1Params, z: Complex64) -> Result<Complex64> {
    hyp2f1_series_with(p, z, SeriesConfig::default())
}

pub fn hyp2f1_series_with(p: Hyp2F1Params, z: Complex64, cfg: SeriesConfig) -> Result<Complex64> {
    if z.norm() > cfg.radius {
        return Err(DshError::Parameter(format!(
            "|z| = {} exceeds series radius {}",
            z.norm(),
            cfg.radius
        )));
    }
    gauss_sum(p.a, p.b, p.c, z, cfg.tol, cfg.max_terms)
}

fn gauss_sum(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    tol: f64,
    cap: usize,
) -> Result<Complex64> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for n in 0..cap {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        if term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
        sum += term;
        if term.norm() < tol * sum.norm() {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(DshError::NonConvergence {
        what: "hypergeometric series",
        terms: cap,
    })
}

/// Finite sum for a or b a nonpositive integer; valid for every z.
fn terminating(p: Hyp2F1Params, deg: u32, z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 0..deg {
        let nf = n as f64;
        term *= (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)) * z;
        sum += term;
    }
    sum
}

/// Connection formulas at z = 1, taking z.
pub fn hyp2f1_near_one(p: Hyp2F1Params, z: Complex64) -> Result<Complex64> {
    hyp2f1_near_one_w(p, 1.0 - z)
}

/// Connection formulas at z = 1, taking w = 1 − z directly so that late-time
/// arguments keep full relative precision.
pub fn hyp2f1_near_one_w(p: Hyp2F1Params, w: Complex64) -> Result<Complex64> {
    if w.norm() > NEAR_ONE_RADIUS {
        return Err(DshError::Parameter(format!(
            "|1 - z| = {} exceeds {}",
            w.norm(),
            NEAR_ONE_RADIUS
        )));
    }
    if w.im == 0.0 && w.re < 0.0 {
        return Err(DshError::Domain(
            "1 - z on the negative real axis (branch cut)".into(),
        ));
    }
    match p.class() {
        Hyp2F1Class::Generic => generic(p, w),
        cls => {
            if is_nonpositive_integer(p.a) || is_nonpositive_integer(p.b) {
                return Err(DshError::Parameter(
                    "logarithmic connection formula requires a, b not in {0, -1, -2, ...}".into(),
                ));
            }
            match cls {
                Hyp2F1Class::CEqAbPlusM(m) => log_plus(p.a, p.b, m, w),
                Hyp2F1Class::CEqAbMinusM(m) => log_minus(p.a, p.b, m, w),
                Hyp2F1Class::Generic => unreachable!(),
            }
        }
    }
}

fn generic(p: Hyp2F1Params, w: Complex64) -> Result<Complex64> {
    let Hyp2F1Params { a, b, c } = p;
    let d = c - a - b;
    let gc = super::gamma::gamma(c)?;
    let first_coef = super::gamma::gamma(d)? * rgamma(c - a) * rgamma(c - b);
    let first = if first_coef == Complex64::new(0.0, 0.0) {
        first_coef
    } else {
        first_coef * gauss_sum(a, b, 1.0 - d, w, INNER_TOL, 1_000_000)?
    };
    if w == Complex64::new(0.0, 0.0) {
        if d.re > 0.0 {
            return Ok(gc * first);
        }
        return Err(DshError::Domain(
            "F(a,b;c;1) diverges for Re(c-a-b) <= 0".into(),
        ));
    }
    let second_coef = super::gamma::gamma(-d)? * rgamma(a) * rgamma(b);
    let second = if second_coef == Complex64::new(0.0, 0.0) {
        second_coef
    } else {
        (d * w.ln()).exp() * second_coef * gauss_sum(c - a, c - b, 1.0 + d, w, INNER_TOL, 1_000_000)?
    };
    Ok(gc * (first + second))
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Log series Σ_n (α)_n (β)_n / ((n+m)! n!) [h_n − ln w] wⁿ with
/// h_{n+1} = h_n + 1/(n+1) + 1/(n+m+1) − 1/(α+n) − 1/(β+n).
fn log_series(alpha: Complex64, beta: Complex64, m: u32, h0: Complex64, w: Complex64) -> Result<Complex64> {
    let lnw = w.ln();
    let mut coef = Complex64::new(1.0 / factorial(m), 0.0);
    let mut h = h0;
    let mut sum = coef * (h - lnw);
    let mut small = 0;
    let mf = m as f64;
    for n in 0..1_000_000usize {
        let nf = n as f64;
        coef *= (alpha + nf) * (beta + nf) / ((nf + mf + 1.0) * (nf + 1.0)) * w;
        h += 1.0 / (nf + 1.0) + 1.0 / (nf + mf + 1.0) - 1.0 / (alpha + nf) - 1.0 / (beta + nf);
        let term = coef * (h - lnw);
        sum += term;
        if coef == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
        if term.norm() < INNER_TOL * sum.norm() {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(DshError::NonConvergence {
        what: "logarithmic connection series",
        terms: 1_000_000,
    })
}

/// Σ_{n<m} (α)_n (β)_n (m−n−1)!/n! (−w)ⁿ
fn principal_sum(alpha: Complex64, beta: Complex64, m: u32, w: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut poch = Complex64::new(1.0, 0.0);
    let mut nfact = 1.0;
    let mut wn = Complex64::new(1.0, 0.0);
    for n in 0..m {
        let nf = n as f64;
        if n > 0 {
            poch *= (alpha + nf - 1.0) * (beta + nf - 1.0);
            nfact *= nf;
            wn *= -w;
        }
        sum += poch * factorial(m - n - 1) / nfact * wn;
    }
    sum
}

/// c = a + b + m.
fn log_plus(a: Complex64, b: Complex64, m: u32, w: Complex64) -> Result<Complex64> {
    let mf = m as f64;
    let c = a + b + mf;
    let gc = super::gamma::gamma(c)?;
    let finite = if m > 0 {
        rgamma(a + mf) * rgamma(b + mf) * principal_sum(a, b, m, w)
    } else {
        Complex64::new(0.0, 0.0)
    };
    if w == Complex64::new(0.0, 0.0) {
        if m == 0 {
            return Err(DshError::Domain(
                "F(a,b;a+b;1) diverges logarithmically".into(),
            ));
        }
        return Ok(gc * finite);
    }
    let one = Complex64::new(1.0, 0.0);
    let h0 = digamma(one)? + digamma(one + mf)? - digamma(a + mf)? - digamma(b + mf)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let tail = sign * w.powu(m) * rgamma(a) * rgamma(b) * log_series(a + mf, b + mf, m, h0, w)?;
    Ok(gc * (finite + tail))
}

/// c = a + b − m, m ≥ 1.
fn log_minus(a: Complex64, b: Complex64, m: u32, w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(DshError::Domain(
            "F(a,b;a+b-m;1) diverges for m >= 1".into(),
        ));
    }
    let mf = m as f64;
    let c = a + b - mf;
    let gc = super::gamma::gamma(c)?;
    let finite = w.powi(-(m as i32)) * rgamma(a) * rgamma(b) * principal_sum(a - mf, b - mf, m, w);
    let coef = rgamma(a - mf) * rgamma(b - mf);
    let tail = if coef == Complex64::new(0.0, 0.0) {
        coef
    } else {
        let one = Complex64::new(1.0, 0.0);
        let h0 = digamma(one)? + digamma(one + mf)? - digamma(a)? - digamma(b)?;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sign * coef * log_series(a, b, m, h0, w)?
    };
    Ok(gc * (finite + tail))
}

/// Unified evaluator.
pub fn hyp2f1(p: Hyp2F1Params, z: Complex64) -> Result<Complex64> {
    hyp2f1_w(p, z, 1.0 - z)
}

/// Unified evaluator with the caller supplying w = 1 − z computed without
/// cancellation.
pub fn hyp2f1_w(p: Hyp2F1Params, z: Complex64, w: Complex64) -> Result<Complex64> {
    if let Some(v) = direct(p, z, w) {
        return v;
    }
    // Pfaff: F(a,b;c;z) = (1−z)^{−a} F(a, c−b; c; z/(z−1)), and 1 − z/(z−1) = 1/w
    let pfaff = Hyp2F1Params::new(p.a, p.c - p.b, p.c)?;
    if let Some(inner) = direct(pfaff, -z / w, 1.0 / w) {
        return Ok((-p.a * w.ln()).exp() * inner?);
    }
    Err(DshError::Parameter(format!(
        "z = {z} outside the supported evaluation region"
    )))
}

/// Evaluation without argument transformations, if one of the direct
/// methods applies.
fn direct(p: Hyp2F1Params, z: Complex64, w: Complex64) -> Option<Result<Complex64>> {
    if let Some(deg) = p.terminating_degree() {
        return Some(Ok(terminating(p, deg, z)));
    }
    if z.norm() <= SERIES_SWITCH {
        return Some(hyp2f1_series(p, z));
    }
    if w.norm() <= NEAR_ONE_RADIUS {
        return Some(hyp2f1_near_one_w(p, w));
    }
    None
}
