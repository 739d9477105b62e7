//! Adaptive Gauss–Kronrod (G10/K21) quadrature.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{DshError, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_462_004_000,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Relative accuracy of the integrand values; the error target never
    /// drops below this fraction of ∫|f|.
    pub noise_rel: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            noise_rel: 50.0 * f64::EPSILON,
            max_intervals: 4000,
        }
    }
}

impl QuadConfig {
    pub fn tight() -> Self {
        Self {
            abs_tol: 1e-300,
            rel_tol: 1e-13,
            noise_rel: 50.0 * f64::EPSILON,
            max_intervals: 4000,
        }
    }

    /// Tight relative accuracy for integrands built from hypergeometric
    /// evaluations, which carry a few ulps times their condition number.
    pub fn cancelling() -> Self {
        Self {
            noise_rel: 1e-14,
            ..Self::tight()
        }
    }
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    l1: f64,
}

fn kronrod<T: Integrand, F: FnMut(f64) -> Result<T>>(f: &mut F, a: f64, b: f64) -> Result<Segment<T>> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = T::zero();
    let mut l1 = fc.magnitude() * WGK[10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x)?;
        let f2 = f(center + x)?;
        let s = f1 + f2;
        res_k = res_k + s * WGK[j];
        l1 += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            res_g = res_g + s * WG[j / 2];
        }
    }
    let value = res_k * half;
    let err = ((res_k - res_g) * half).magnitude();
    Ok(Segment {
        a,
        b,
        value,
        err,
        l1: l1 * half.abs(),
    })
}

/// ∫_a^b f with a fallible integrand. `label` names the integral in errors.
pub fn integrate<T, F>(label: &str, mut f: F, a: f64, b: f64, cfg: QuadConfig) -> Result<T>
where
    T: Integrand,
    F: FnMut(f64) -> Result<T>,
{
    if a == b {
        return Ok(T::zero());
    }
    let mut segs = vec![kronrod(&mut f, a, b)?];
    loop {
        let total = segs.iter().fold(T::zero(), |acc, s| acc + s.value);
        let err: f64 = segs.iter().map(|s| s.err).sum();
        let l1: f64 = segs.iter().map(|s| s.l1).sum();
        let target = cfg
            .abs_tol
            .max(cfg.rel_tol * total.magnitude())
            .max(cfg.noise_rel * l1);
        if err <= target {
            return Ok(total);
        }
        if segs.len() >= cfg.max_intervals {
            return Err(DshError::Quadrature {
                label: label.to_string(),
                a,
                b,
                err,
            });
        }
        let (idx, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("non-empty");
        let worst = segs.swap_remove(idx);
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            return Err(DshError::Quadrature {
                label: label.to_string(),
                a: worst.a,
                b: worst.b,
                err,
            });
        }
        segs.push(kronrod(&mut f, worst.a, mid)?);
        segs.push(kronrod(&mut f, mid, worst.b)?);
    }
}

/// Infallible-integrand convenience wrapper.
pub fn integrate_ok<T, F>(label: &str, mut f: F, a: f64, b: f64, cfg: QuadConfig) -> Result<T>
where
    T: Integrand,
    F: FnMut(f64) -> T,
{
    integrate(label, |x| Ok(f(x)), a, b, cfg)
}
