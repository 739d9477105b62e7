//! Flat-space radial Kirchhoff machinery.
//!
//! For radial data φ and a point at distance `r_center` from the origin,
//! `V(x,s) = s·M_φ(x,s)` solves `V_ss = ΔV`, `V(·,0) = 0`, `V_s(·,0) = φ`, and
//! `v = ∂_s V` solves the problem with `v(·,0) = φ`, `v_s(·,0) = 0`.

use crate::error::{DshError, Result};
use crate::quad::{integrate_ok, QuadConfig};

/// A radial profile with compact support.
pub trait RadialProfile: Send + Sync {
    fn value(&self, r: f64) -> f64;
    fn derivative(&self, r: f64) -> f64;
    /// Radius beyond which the profile vanishes.
    fn support(&self) -> f64;
}

/// amp·exp(−1/(1−(r/eps)²)) for r < eps, zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialBump {
    pub eps: f64,
    pub amp: f64,
}

impl RadialBump {
    pub fn new(eps: f64, amp: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() || !amp.is_finite() {
            return Err(DshError::Parameter(format!(
                "bump needs finite eps > 0 and finite amplitude, got eps = {eps}, amp = {amp}"
            )));
        }
        Ok(Self { eps, amp })
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            eps: self.eps,
            amp: self.amp * c,
        }
    }
}

impl RadialProfile for RadialBump {
    fn value(&self, r: f64) -> f64 {
        let u = r.abs() / self.eps;
        if u >= 1.0 {
            return 0.0;
        }
        self.amp * (-1.0 / (1.0 - u * u)).exp()
    }

    fn derivative(&self, r: f64) -> f64 {
        let u = r.abs() / self.eps;
        if u >= 1.0 {
            return 0.0;
        }
        let d = 1.0 - u * u;
        -self.value(r) * 2.0 * r / (self.eps * self.eps * d * d)
    }

    fn support(&self) -> f64 {
        self.eps
    }
}

/// Abstract propagator for the operator 𝒜 in the generalized equations.
/// Only the flat Laplacian is provided.
pub trait WavePropagator {
    /// V(x, s) at distance `r_center` from the origin.
    fn potential(&self, phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64;
    /// v(x, s) = ∂_s V.
    fn solution(&self, phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64;
    /// ∂_r V along the radial direction through x.
    fn potential_dr(&self, phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FlatLaplacian;

impl WavePropagator for FlatLaplacian {
    fn potential(&self, phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64 {
        wave_potential(phi, r_center, s)
    }
    fn solution(&self, phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64 {
        wave_solution(phi, r_center, s)
    }
    fn potential_dr(&self, phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64 {
        wave_potential_dr(phi, r_center, s)
    }
}

/// ∫_lo^hi ρφ(ρ) dρ restricted to the support.
fn moment(phi: &dyn RadialProfile, lo: f64, hi: f64) -> f64 {
    let hi = hi.min(phi.support());
    if hi <= lo {
        return 0.0;
    }
    let cfg = QuadConfig {
        abs_tol: 0.0,
        ..QuadConfig::default()
    };
    integrate_ok("spherical mean", |rho: f64| rho * phi.value(rho), lo, hi, cfg)
        .unwrap_or(f64::NAN)
}

/// Mean of φ over the sphere of radius s centred at distance `r_center`.
pub fn spherical_mean(phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64 {
    if r_center == 0.0 {
        return phi.value(s);
    }
    if s == 0.0 {
        return phi.value(r_center);
    }
    moment(phi, (r_center - s).abs(), r_center + s) / (2.0 * r_center * s)
}

/// V(x, s) = s·(spherical mean).
pub fn wave_potential(phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    if r_center == 0.0 {
        return s * phi.value(s);
    }
    moment(phi, (r_center - s).abs(), r_center + s) / (2.0 * r_center)
}

/// v(x, s) = ∂_s V from the boundary terms of the 1D integral.
pub fn wave_solution(phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64 {
    if r_center == 0.0 {
        return phi.value(s) + s * phi.derivative(s);
    }
    let d = r_center - s;
    ((r_center + s) * phi.value(r_center + s) + d * phi.value(d.abs())) / (2.0 * r_center)
}

/// ∂V/∂r_center.
pub fn wave_potential_dr(phi: &dyn RadialProfile, r_center: f64, s: f64) -> f64 {
    if r_center == 0.0 || s == 0.0 {
        return 0.0;
    }
    let d = r_center - s;
    let boundary = ((r_center + s) * phi.value(r_center + s) - d * phi.value(d.abs())) / (2.0 * r_center);
    boundary - wave_potential(phi, r_center, s) / r_center
}
