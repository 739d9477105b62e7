//! De Sitter kernels E, K₀, K₁ and the derivative combinations entering the
//! Dirac solution.

mod asymptotics;

pub(crate) mod asymptotics_internal {
    pub(crate) use super::asymptotics::{class_weight, combo_leading};
}

pub use asymptotics::{
    combo_asymptote, reference_coefficient, tail_asymptote, validated_coefficient, MassClass,
};

use num_complex::Complex64;

use crate::error::{DshError, Result};
use crate::specfun::{hyp2f1_w, Hyp2F1Params};

/// Points with (τ₀+τ)² − (Hr)² below this are treated as on the light cone.
pub const CONE_GUARD: f64 = 1e-12;

/// Hubble constant and complex mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosmologyParams {
    pub h: f64,
    pub m: Complex64,
}

impl CosmologyParams {
    pub fn new(h: f64, m: Complex64) -> Result<Self> {
        if h == 0.0 || !h.is_finite() {
            return Err(DshError::Parameter(format!("H = {h} must be finite and nonzero")));
        }
        if !m.re.is_finite() || !m.im.is_finite() {
            return Err(DshError::Parameter(format!("mass {m} is not finite")));
        }
        Ok(Self { h, m })
    }

    /// Contracting universes are accepted but callers may want to warn.
    pub fn is_contracting(&self) -> bool {
        self.h < 0.0
    }

    /// M₊ = H/2 + i m
    pub fn m_plus(&self) -> Complex64 {
        0.5 * self.h + Complex64::i() * self.m
    }

    /// M₋ = H/2 − i m
    pub fn m_minus(&self) -> Complex64 {
        0.5 * self.h - Complex64::i() * self.m
    }

    /// The same cosmology with m → −m.
    pub fn mirrored(&self) -> Self {
        Self { h: self.h, m: -self.m }
    }
}

/// φ(t) = (1 − e^{−Ht})/H
pub fn phi_dist(t: f64, h: f64) -> f64 {
    -(-h * t).exp_m1() / h
}

/// τ = e^{−Ht}, A = Hr and the hypergeometric argument for the origin event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightconeCoords {
    pub r: f64,
    pub t: f64,
    pub tau: f64,
    pub a: f64,
    pub z: f64,
    pub one_minus_z: f64,
}

impl LightconeCoords {
    pub fn new(r: f64, t: f64, h: f64) -> Result<Self> {
        let tau = (-h * t).exp();
        let a = h * r;
        let p = (1.0 + tau).powi(2) - a * a;
        if p < CONE_GUARD {
            return Err(DshError::Domain(format!(
                "(1+tau)^2 - (Hr)^2 = {p:e} at r = {r}, t = {t}"
            )));
        }
        Ok(Self {
            r,
            t,
            tau,
            a,
            z: ((1.0 - tau).powi(2) - a * a) / p,
            one_minus_z: 4.0 * tau / p,
        })
    }

    /// (1+τ)² − A²
    pub fn p(&self) -> f64 {
        (1.0 + self.tau).powi(2) - self.a * self.a
    }

    /// 1 − τ² − A²
    pub fn q(&self) -> f64 {
        1.0 - self.tau * self.tau - self.a * self.a
    }

    fn hyp(&self, a: Complex64, b: Complex64, c: f64) -> Result<Complex64> {
        hyp2f1_w(
            Hyp2F1Params::new(a, b, c.into())?,
            self.z.into(),
            self.one_minus_z.into(),
        )
    }
}

/// E(r,t;0,t₀;M)
pub fn kernel_e(r: f64, t: f64, t0: f64, mass: Complex64, cp: &CosmologyParams) -> Result<Complex64> {
    let h = cp.h;
    let tau = (-h * t).exp();
    let tau0 = (-h * t0).exp();
    let a = h * r;
    let p = (tau0 + tau).powi(2) - a * a;
    if p < CONE_GUARD {
        return Err(DshError::Domain(format!(
            "(e^(-Ht0)+e^(-Ht))^2 - (Hr)^2 = {p:e} at r = {r}, t = {t}, t0 = {t0}"
        )));
    }
    let z = ((tau - tau0).powi(2) - a * a) / p;
    let w = 4.0 * tau * tau0 / p;
    let mu = mass / h;
    let par = 0.5 - mu;
    let f = hyp2f1_w(Hyp2F1Params::new(par, par, 1.0.into())?, z.into(), w.into())?;
    // 4^{−M/H} P^{M/H−1/2} = (P/4)^{M/H} / √P
    let pow = (mass * (t0 + t) + mu * (p / 4.0).ln()).exp() / p.sqrt();
    Ok(pow * f)
}

/// K₁(r,t;M) = E(r,t;0,0;M), explicit form.
pub fn kernel_k1(r: f64, t: f64, mass: Complex64, cp: &CosmologyParams) -> Result<Complex64> {
    let lc = LightconeCoords::new(r, t, cp.h)?;
    kernel_k1_at(&lc, mass, cp)
}

#[allow(dead_code)]
pub(crate) fn kernel_k1_at(lc: &LightconeCoords, mass: Complex64, cp: &CosmologyParams) -> Result<Complex64> {
    let mu = mass / cp.h;
    let par = 0.5 - mu;
    let p = lc.p();
    let f = lc.hyp(par, par, 1.0)?;
    Ok((mass * lc.t + mu * (p / 4.0).ln()).exp() / p.sqrt() * f)
}

/// K₀(r,t;M) = −∂_b E(r,t;0,b;M) at b = 0, by Richardson-extrapolated
/// central differences with the default step.
pub fn kernel_k0(r: f64, t: f64, mass: Complex64, cp: &CosmologyParams) -> Result<Complex64> {
    kernel_k0_with_step(r, t, mass, cp, 1e-5 * (1.0f64).min(1.0 / cp.h.abs()))
}

pub fn kernel_k0_with_step(r: f64, t: f64, mass: Complex64, cp: &CosmologyParams, h: f64) -> Result<Complex64> {
    let d = |step: f64| -> Result<Complex64> {
        Ok((kernel_e(r, t, step, mass, cp)? - kernel_e(r, t, -step, mass, cp)?) / (2.0 * step))
    };
    let coarse = d(h)?;
    let fine = d(0.5 * h)?;
    Ok(-(4.0 * fine - coarse) / 3.0)
}

/// (∂_t − H/2 − im) K₁(r,t;M₊) in closed form.
pub fn dirac_combo_plus(r: f64, t: f64, cp: &CosmologyParams) -> Result<Complex64> {
    let lc = LightconeCoords::new(r, t, cp.h)?;
    combo_plus_at(&lc, cp)
}

fn combo_plus_at(lc: &LightconeCoords, cp: &CosmologyParams) -> Result<Complex64> {
    combo_terms(lc, cp, 1.0).map(|(v, _)| v)
}

/// Value of the combination for `sign = 1` (plus) or `sign = −1` (minus),
/// together with the magnitude of the two bracket terms before they cancel.
pub(crate) fn combo_terms(lc: &LightconeCoords, cp: &CosmologyParams, sign: f64) -> Result<(Complex64, f64)> {
    let im = Complex64::i() * cp.m;
    if im == Complex64::new(0.0, 0.0) {
        return Ok((im, 0.0));
    }
    let s = sign * im / cp.h;
    let one = Complex64::new(1.0, 0.0);
    let p = lc.p();
    let pref = sign
        * im
        * (-2.0 * s * std::f64::consts::LN_2 + lc.t * (2.0 * s * cp.h - cp.h) / 2.0 + (s - 2.0) * p.ln())
            .exp();
    let a = 2.0 * s * lc.q() * lc.hyp(one - s, one - s, 2.0)?;
    let b = (1.0 + lc.tau) * p * lc.hyp(-s, -s, 1.0)?;
    Ok((pref * (a - b), pref.norm() * (a.norm() + b.norm())))
}

/// (∂_t − H/2 + im) K₁(r,t;M₋) in closed form.
pub fn dirac_combo_minus(r: f64, t: f64, cp: &CosmologyParams) -> Result<Complex64> {
    let lc = LightconeCoords::new(r, t, cp.h)?;
    combo_minus_at(&lc, cp)
}

fn combo_minus_at(lc: &LightconeCoords, cp: &CosmologyParams) -> Result<Complex64> {
    combo_terms(lc, cp, -1.0).map(|(v, _)| v)
}

/// ℱ(τ, A; ℓ)
pub fn script_f(tau: f64, a: f64, ell: i32) -> Result<f64> {
    let p = (1.0 + tau).powi(2) - a * a;
    if p < CONE_GUARD {
        return Err(DshError::Domain(format!(
            "(1+tau)^2 - A^2 = {p:e} at tau = {tau}, A = {a}"
        )));
    }
    let z = ((1.0 - tau).powi(2) - a * a) / p;
    let w = 4.0 * tau / p;
    let alpha = Complex64::from((ell as f64 + 1.0) / 2.0);
    let f1 = hyp2f1_w(Hyp2F1Params::new(alpha, alpha, 1.0.into())?, z.into(), w.into())?;
    let f2 = hyp2f1_w(
        Hyp2F1Params::new(alpha + 1.0, alpha + 1.0, 2.0.into())?,
        z.into(),
        w.into(),
    )?;
    let q = 1.0 - tau * tau - a * a;
    Ok(((1.0 + tau) * p * f1 + (ell as f64 + 1.0) * q * f2).re)
}
