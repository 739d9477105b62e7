//! Assembly of the Klein-Gordon and Dirac solutions and their origin tails.

use num_complex::Complex64;

use crate::error::{DshError, Result};
use crate::kernels::{
    combo_terms, kernel_e, kernel_k0, kernel_k1, phi_dist, CosmologyParams,
    LightconeCoords,
};
use crate::quad::{integrate, integrate_ok, QuadConfig};
use crate::wave::{wave_potential, wave_potential_dr, wave_solution, RadialBump, RadialProfile};

/// Which 2-spinor pair carries the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinorSplit {
    FirstPair,
    SecondPair,
    Full,
}

/// Four-spinor radial initial data Φ = (Φ₀, Φ₁, Φ₂, Φ₃); `None` is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorData {
    pub phi: [Option<RadialBump>; 4],
    pub split: SpinorSplit,
}

impl SpinorData {
    pub fn new(phi: [Option<RadialBump>; 4], split: SpinorSplit) -> Result<Self> {
        let bad = match split {
            SpinorSplit::FirstPair => phi[2].is_some() || phi[3].is_some(),
            SpinorSplit::SecondPair => phi[0].is_some() || phi[1].is_some(),
            SpinorSplit::Full => false,
        };
        if bad {
            return Err(DshError::Parameter(format!(
                "data outside the {split:?} components"
            )));
        }
        Ok(Self { phi, split })
    }

    pub fn first(phi0: Option<RadialBump>, phi1: Option<RadialBump>) -> Self {
        Self {
            phi: [phi0, phi1, None, None],
            split: SpinorSplit::FirstPair,
        }
    }

    pub fn second(phi2: Option<RadialBump>, phi3: Option<RadialBump>) -> Self {
        Self {
            phi: [None, None, phi2, phi3],
            split: SpinorSplit::SecondPair,
        }
    }

    /// Initial values at distance `r` from the origin.
    pub fn at(&self, r: f64) -> [f64; 4] {
        self.phi.map(|p| p.map_or(0.0, |b| b.value(r)))
    }
}

/// f(r, b) in the inhomogeneous equation.
pub trait SpacetimeSource: Send + Sync {
    fn value(&self, r: f64, b: f64) -> f64;
    fn d_r(&self, r: f64, b: f64) -> f64;
    fn support(&self) -> f64;
}

struct SourceSlice<'a> {
    src: &'a dyn SpacetimeSource,
    b: f64,
}

impl RadialProfile for SourceSlice<'_> {
    fn value(&self, r: f64) -> f64 {
        self.src.value(r, self.b)
    }
    fn derivative(&self, r: f64) -> f64 {
        self.src.d_r(r, self.b)
    }
    fn support(&self) -> f64 {
        self.src.support()
    }
}

/// u_tt − e^{−2Ht}Δu − M²u = f with u(·,0) = φ₀, u_t(·,0) = φ₁.
pub struct KGProblem {
    pub mass: Complex64,
    pub cp: CosmologyParams,
    pub varphi0: Option<RadialBump>,
    pub varphi1: Option<RadialBump>,
    pub source: Option<Box<dyn SpacetimeSource>>,
}

fn support_window(phi: &dyn RadialProfile, r_center: f64, upper: f64) -> Option<(f64, f64)> {
    let lo = (r_center - phi.support()).max(0.0);
    let hi = (r_center + phi.support()).min(upper);
    (hi > lo).then_some((lo, hi))
}

fn kernel_transform<K>(label: &str, phi: &dyn RadialProfile, r_center: f64, upper: f64, kernel: K) -> Result<Complex64>
where
    K: Fn(f64) -> Result<Complex64>,
{
    match support_window(phi, r_center, upper) {
        None => Ok(Complex64::new(0.0, 0.0)),
        Some((lo, hi)) => Ok(2.0
            * integrate(
                label,
                |s| Ok(kernel(s)? * wave_solution(phi, r_center, s)),
                lo,
                hi,
                QuadConfig::default(),
            )?),
    }
}

/// Value of u at distance `r_center` from the origin and time t.
pub fn kg_solve(p: &KGProblem, r_center: f64, t: f64) -> Result<Complex64> {
    if !(t >= 0.0) {
        return Err(DshError::Precondition(format!("t = {t} must be >= 0")));
    }
    let cp = &p.cp;
    let f = phi_dist(t, cp.h);
    let mut u = Complex64::new(0.0, 0.0);
    if let Some(phi0) = &p.varphi0 {
        u += (0.5 * cp.h * t).exp() * wave_solution(phi0, r_center, f);
        u += kernel_transform("K0 transform of varphi0", phi0, r_center, f, |s| {
            kernel_k0(s, t, p.mass, cp)
        })?;
    }
    if let Some(phi1) = &p.varphi1 {
        u += kernel_transform("K1 transform of varphi1", phi1, r_center, f, |s| {
            kernel_k1(s, t, p.mass, cp)
        })?;
    }
    if let Some(src) = &p.source {
        u += source_term(src.as_ref(), p.mass, cp, r_center, t)?;
    }
    Ok(u)
}

fn source_term(src: &dyn SpacetimeSource, mass: Complex64, cp: &CosmologyParams, r_center: f64, t: f64) -> Result<Complex64> {
    let f = phi_dist(t, cp.h);
    let inner = |b: f64| -> Result<Complex64> {
        let slice = SourceSlice { src, b };
        kernel_transform("source inner integral", &slice, r_center, f - phi_dist(b, cp.h), |r| {
            kernel_e(r, t, b, mass, cp)
        })
    };
    integrate("source outer integral", inner, 0.0, t, QuadConfig::default())
}

/// 2∫₀^{φ(t)} K₁(s,t;M) v_φ(x,s) ds by quadrature.
pub fn k1_operator_quadrature(phi: &RadialBump, mass: Complex64, cp: &CosmologyParams, r_center: f64, t: f64) -> Result<Complex64> {
    kernel_transform("K1 operator", phi, r_center, phi_dist(t, cp.h), |s| {
        kernel_k1(s, t, mass, cp)
    })
}

/// 𝒦₁(M)[φ] with its time and radial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K1Closed {
    pub value: Complex64,
    pub dt: Complex64,
    pub dr: Complex64,
}

/// Closed forms of 𝒦₁(M)[φ] for M ∈ {−H/2, H/2, 3H/2}.
pub fn k1_operator_closed(phi: &RadialBump, mass: Complex64, cp: &CosmologyParams, r_center: f64, t: f64) -> Result<K1Closed> {
    let h = cp.h;
    let mu = mass / h;
    let f = phi_dist(t, h);
    let df = (-h * t).exp();
    let big_v = wave_potential(phi, r_center, f);
    let small_v = wave_solution(phi, r_center, f);
    let v_r = wave_potential_dr(phi, r_center, f);
    let c = |x: f64| Complex64::new(x, 0.0);
    if (mu - 0.5).norm() < 1e-12 || (mu + 0.5).norm() < 1e-12 {
        let e = (0.5 * h * t).exp();
        let value = e * big_v;
        return Ok(K1Closed {
            value: c(value),
            dt: c(0.5 * h * value + e * small_v * df),
            dr: c(e * v_r),
        });
    }
    if (mu - 1.5).norm() < 1e-12 {
        let e3 = (1.5 * h * t).exp();
        let q = (-2.0 * h * t).exp();
        let h2 = h * h;
        let (j, j_r) = match support_window(phi, r_center, f) {
            None => (0.0, 0.0),
            Some((lo, hi)) => (
                integrate_ok("s V moment", |s| s * wave_potential(phi, r_center, s), lo, hi, QuadConfig::tight())?,
                integrate_ok("s V_r moment", |s| s * wave_potential_dr(phi, r_center, s), lo, hi, QuadConfig::tight())?,
            ),
        };
        let value = 0.5 * e3 * (1.0 + q) * big_v - 0.5 * h2 * e3 * f * f * big_v + h2 * e3 * j;
        let dt = 1.5 * h * value
            + e3 * (-h * q * big_v + 0.5 * (1.0 + q) * small_v * df
                - 0.5 * h2 * (2.0 * f * df * big_v + f * f * small_v * df)
                + h2 * f * big_v * df);
        let dr = 0.5 * e3 * (1.0 + q) * v_r - 0.5 * h2 * e3 * f * f * v_r + h2 * e3 * j_r;
        return Ok(K1Closed {
            value: c(value),
            dt: c(dt),
            dr: c(dr),
        });
    }
    Err(DshError::Parameter(format!(
        "no closed form for M = {mass} (need -H/2, H/2 or 3H/2)"
    )))
}

/// Dirac components at the point (0, 0, r_center) from the closed-form
/// kernels. Requires M₊ (first-pair data) and M₋ (second-pair data) to lie in
/// {−H/2, H/2, 3H/2}; no Huygens matching is enforced.
pub fn dirac_closed_form(data: &SpinorData, cp: &CosmologyParams, r_center: f64, t: f64) -> Result<[Complex64; 4]> {
    let h = cp.h;
    let im = Complex64::i() * cp.m;
    let e1 = (-h * t).exp();
    let e2 = e1 * e1;
    let mut psi = [Complex64::new(0.0, 0.0); 4];
    // (diagonal index, mass, ∂₃ target index, sign of −σ₃ entry)
    let slots = [
        (0usize, cp.m_plus(), -(0.5 * h + im), 2usize, -1.0),
        (1, cp.m_plus(), -(0.5 * h + im), 3, 1.0),
        (2, cp.m_minus(), -(0.5 * h - im), 0, -1.0),
        (3, cp.m_minus(), -(0.5 * h - im), 1, 1.0),
    ];
    for (idx, mass, shift, target, sign) in slots {
        if let Some(phi) = &data.phi[idx] {
            let k = k1_operator_closed(phi, mass, cp, r_center, t)?;
            psi[idx] += e1 * (k.dt + shift * k.value);
            psi[target] += sign * e2 * k.dr;
        }
    }
    Ok(psi)
}

/// Dirac solution for the Huygens masses: m = 0 with any data, m = iH with
/// first-pair data, m = −iH with second-pair data.
pub fn dirac_special(data: &SpinorData, cp: &CosmologyParams, r_center: f64, t: f64) -> Result<[Complex64; 4]> {
    let tol = 1e-12 * cp.h.abs();
    let i = Complex64::i();
    let ok = cp.m.norm() < tol
        || ((cp.m - i * cp.h).norm() < tol && data.split == SpinorSplit::FirstPair)
        || ((cp.m + i * cp.h).norm() < tol && data.split == SpinorSplit::SecondPair);
    if !ok {
        return Err(DshError::Parameter(format!(
            "unsupported pairing of m = {} with {:?}",
            cp.m, data.split
        )));
    }
    dirac_closed_form(data, cp, r_center, t)
}

fn tail_precondition(phi: &RadialBump, cp: &CosmologyParams, t: f64) -> Result<()> {
    let f = phi_dist(t, cp.h);
    if f <= phi.eps {
        return Err(DshError::Precondition(format!(
            "phi(t) = {f} does not exceed the support radius {}",
            phi.eps
        )));
    }
    Ok(())
}

/// Relative accuracy assumed for the combination before its terms cancel.
const COMBO_NOISE: f64 = 1e-13;

fn origin_tail(label: &str, phi: &RadialBump, cp: &CosmologyParams, t: f64, sign: f64) -> Result<Complex64> {
    tail_precondition(phi, cp, t)?;
    let weight = |s: f64| phi.value(s) + s * phi.derivative(s);
    // noise floor: cancellation inside the combination limits the attainable
    // absolute accuracy to COMBO_NOISE times the size of its terms
    let n = 16;
    let mut scale = 0.0f64;
    let mut mass = 0.0;
    for k in 0..n {
        let s = phi.eps * (k as f64 + 0.5) / n as f64;
        let (_, sc) = combo_terms(&LightconeCoords::new(s, t, cp.h)?, cp, sign)?;
        scale = scale.max(sc);
        mass += weight(s).abs() * phi.eps / n as f64;
    }
    let cfg = QuadConfig {
        abs_tol: COMBO_NOISE * scale * mass,
        ..QuadConfig::cancelling()
    };
    let integral = integrate(
        label,
        |s| {
            let lc = LightconeCoords::new(s, t, cp.h)?;
            Ok(weight(s) * combo_terms(&lc, cp, sign)?.0)
        },
        0.0,
        phi.eps,
        cfg,
    )?;
    Ok(2.0 * (-cp.h * t).exp() * integral)
}

/// Ψ₀(0,t) for data (Φ₀,0,0,0) once the cone has left the support.
pub fn dirac_tail_first(phi0: &RadialBump, cp: &CosmologyParams, t: f64) -> Result<Complex64> {
    origin_tail("first-split tail", phi0, cp, t, 1.0)
}

/// Ψ₂(0,t) for data (0,0,Φ₂,0) once the cone has left the support.
pub fn dirac_tail_second(phi2: &RadialBump, cp: &CosmologyParams, t: f64) -> Result<Complex64> {
    origin_tail("second-split tail", phi2, cp, t, -1.0)
}
