use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::CosmologyParams;
use crate::error::{DshError, Result};
use crate::specfun::{gamma, rgamma};

/// Position of m relative to the lattice m = i(H/2)(1+ℓ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassClass {
    Generic,
    /// ℓ = 2k+1, k ≤ −3
    OddNeg(i32),
    /// ℓ = 2k+1, k ≥ 1
    OddPos(i32),
    /// ℓ = 2k, k ≥ 1
    EvenPos(i32),
    /// ℓ = 2k, k ≤ −2
    EvenNeg(i32),
    /// ℓ = −2
    MinusHalf,
    /// ℓ = 0
    PlusHalf,
    /// ℓ = −1
    Zero,
    /// ℓ = 1
    PlusIh,
    /// ℓ = −3
    MinusIh,
}

/// Lattice detection tolerance, in units of H.
pub const LATTICE_TOL: f64 = 1e-9;

impl MassClass {
    pub fn from_ell(ell: i32) -> Self {
        match ell {
            -1 => Self::Zero,
            1 => Self::PlusIh,
            -3 => Self::MinusIh,
            0 => Self::PlusHalf,
            -2 => Self::MinusHalf,
            l if l % 2 == 0 && l > 0 => Self::EvenPos(l / 2),
            l if l % 2 == 0 => Self::EvenNeg(l / 2),
            l if l > 0 => Self::OddPos((l - 1) / 2),
            l => Self::OddNeg((l - 1) / 2),
        }
    }

    pub fn classify(cp: &CosmologyParams) -> Self {
        // m = i(H/2)(1+ℓ)  ⇔  ℓ = −2im/H − 1
        let x = -2.0 * Complex64::i() * cp.m / cp.h - 1.0;
        let n = x.re.round();
        if (x - n).norm() * 0.5 < LATTICE_TOL && n.abs() < i32::MAX as f64 {
            Self::from_ell(n as i32)
        } else {
            Self::Generic
        }
    }

    pub fn ell(&self) -> Option<i32> {
        Some(match *self {
            Self::Generic => return None,
            Self::OddNeg(k) | Self::OddPos(k) => 2 * k + 1,
            Self::EvenPos(k) | Self::EvenNeg(k) => 2 * k,
            Self::MinusHalf => -2,
            Self::PlusHalf => 0,
            Self::Zero => -1,
            Self::PlusIh => 1,
            Self::MinusIh => -3,
        })
    }

    /// Classes whose origin tail vanishes identically.
    pub fn is_huygensian(&self) -> bool {
        matches!(self, Self::Zero | Self::PlusIh | Self::MinusIh)
    }

    /// α = (ℓ+1)/2, so that im/H = −α on the lattice.
    fn alpha(&self) -> Option<f64> {
        self.ell().map(|l| (l as f64 + 1.0) / 2.0)
    }

    pub fn name(&self) -> String {
        match *self {
            Self::Generic => "GENERIC".into(),
            Self::OddNeg(k) => format!("ODD_NEG(k={k})"),
            Self::OddPos(k) => format!("ODD_POS(k={k})"),
            Self::EvenPos(k) => format!("EVEN_POS(k={k})"),
            Self::EvenNeg(k) => format!("EVEN_NEG(k={k})"),
            Self::MinusHalf => "MINUS_HALF".into(),
            Self::PlusHalf => "PLUS_HALF".into(),
            Self::Zero => "ZERO".into(),
            Self::PlusIh => "PLUS_IH".into(),
            Self::MinusIh => "MINUS_IH".into(),
        }
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn g(x: f64) -> f64 {
    gamma(c(x)).map(|v| v.re).unwrap_or(f64::NAN)
}

/// Which branch of the τ → 0 expansion dominates for a generic mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GenericBranch {
    Pole,
    Regular,
    Both,
}

fn generic_branch(s: Complex64) -> GenericBranch {
    let x = 2.0 * s.re;
    if (x - 1.0).abs() < 1e-12 {
        GenericBranch::Both
    } else if x < 1.0 {
        GenericBranch::Pole
    } else {
        GenericBranch::Regular
    }
}

/// Coefficient of τ^{2s}(1−A²)^{1−2s} in the generic bracket.
fn generic_pole_coef(s: Complex64) -> Result<Complex64> {
    let g1 = rgamma(1.0 - s);
    Ok(2.0 * s * (2.0 * s * 2.0 * LN_2).exp() * gamma(-2.0 * s)? * g1 * g1)
}

/// Coefficient of τ in the generic bracket as a function of A².
fn generic_regular(s: Complex64, a2: f64) -> Result<Complex64> {
    let g1 = rgamma(1.0 + s);
    Ok(-2.0 * s * (1.0 + (1.0 - 2.0 * s) * a2) * gamma(2.0 * s - 1.0)? * g1 * g1)
}

/// Pole family (α ≥ 1/2): ℱ ≈ K_α (1−A²)^{1+2α} τ^{−2α}.
fn pole_coef(alpha: f64) -> f64 {
    2.0 * alpha * 4f64.powf(-2.0 * alpha) * g(2.0 * alpha) / g(alpha + 1.0).powi(2)
}

/// Regular family (α ≤ −3/2 and α = −1): ℱ ≈ c₁(A) τ.
fn regular_coef(alpha: f64, a2: f64) -> f64 {
    -2.0 * alpha * (1.0 + (2.0 * alpha + 1.0) * a2) * g(-1.0 - 2.0 * alpha) / g(1.0 - alpha).powi(2)
}

fn check(cls: MassClass, cp: &CosmologyParams, r: f64, t: f64) -> Result<()> {
    let actual = MassClass::classify(cp);
    if actual != cls {
        return Err(DshError::Parameter(format!(
            "mass {} is {}, not {}",
            cp.m,
            actual.name(),
            cls.name()
        )));
    }
    if (-cp.h * t).exp() >= 0.1 {
        return Err(DshError::Precondition(format!(
            "asymptotics need e^(-Ht) < 0.1, got t = {t}"
        )));
    }
    let rmax = 0.5f64.min(0.5 / cp.h.abs());
    if !(0.0..=rmax).contains(&r) {
        return Err(DshError::Precondition(format!(
            "r = {r} outside [0, {rmax}]"
        )));
    }
    Ok(())
}

/// Leading large-time value of the bracket multiplying the prefactor of the
/// first-split combination. For GENERIC this is the brace of the closed form
/// of (∂_t − H/2 − im)K₁(·;M₊); for lattice classes it is ℱ(τ, A; ℓ).
pub fn tail_asymptote(cls: MassClass, cp: &CosmologyParams, r: f64, t: f64) -> Result<Complex64> {
    check(cls, cp, r, t)?;
    bracket_leading(cls, cp, r, t)
}

fn bracket_leading(cls: MassClass, cp: &CosmologyParams, r: f64, t: f64) -> Result<Complex64> {
    let a2 = (cp.h * r).powi(2);
    let ht = cp.h * t;
    let tau = (-ht).exp();
    Ok(match cls {
        MassClass::Zero | MassClass::PlusIh | MassClass::MinusIh => c(0.0),
        MassClass::Generic => {
            let s = Complex64::i() * cp.m / cp.h;
            let pole = || -> Result<Complex64> {
                Ok(generic_pole_coef(s)? * ((1.0 - 2.0 * s) * (1.0 - a2).ln() - 2.0 * s * ht).exp())
            };
            match generic_branch(s) {
                GenericBranch::Pole => pole()?,
                GenericBranch::Regular => generic_regular(s, a2)? * tau,
                GenericBranch::Both => pole()? + generic_regular(s, a2)? * tau,
            }
        }
        MassClass::OddPos(_) | MassClass::EvenPos(_) | MassClass::PlusHalf => {
            let al = cls.alpha().expect("lattice");
            c(pole_coef(al) * (1.0 - a2).powf(1.0 + 2.0 * al) * (2.0 * al * ht).exp())
        }
        MassClass::OddNeg(_) | MassClass::EvenNeg(_) => {
            let al = cls.alpha().expect("lattice");
            c(regular_coef(al, a2) * tau)
        }
        MassClass::MinusHalf => {
            c(-4.0 * tau / PI * (1.0 + a2 - (4.0 * (1.0 - a2)).ln() - ht))
        }
    })
}

/// Leading large-time value of (∂_t − H/2 − im)K₁(r,t;M₊): the bracket of
/// [`tail_asymptote`] times its prefactor with (1+τ)² − A² replaced by 1 − A².
pub fn combo_asymptote(cls: MassClass, cp: &CosmologyParams, r: f64, t: f64) -> Result<Complex64> {
    check(cls, cp, r, t)?;
    combo_leading(cls, cp, r, t)
}

pub(crate) fn combo_leading(cls: MassClass, cp: &CosmologyParams, r: f64, t: f64) -> Result<Complex64> {
    let bracket = bracket_leading(cls, cp, r, t)?;
    let a2 = (cp.h * r).powi(2);
    let ln1a = (1.0 - a2).ln();
    let h = cp.h;
    let pref = match cls.alpha() {
        None => {
            let im = Complex64::i() * cp.m;
            let s = im / h;
            im * (-2.0 * s * LN_2 + t * (2.0 * im - h) / 2.0 + (s - 2.0) * ln1a).exp()
        }
        Some(al) => c(h * al * (2.0 * al * LN_2 - h * t * (2.0 * al + 1.0) / 2.0 - (al + 2.0) * ln1a).exp()),
    };
    Ok(pref * bracket)
}

/// Closed-form constant of the leading term at A = 0 from the reference
/// expansions. Reports carry it next to the fitted value.
pub fn reference_coefficient(cls: MassClass, cp: &CosmologyParams) -> Option<Complex64> {
    match cls {
        MassClass::Zero | MassClass::PlusIh | MassClass::MinusIh => Some(c(0.0)),
        MassClass::Generic => {
            let s = Complex64::i() * cp.m / cp.h;
            generic_pole_coef(s).ok()
        }
        MassClass::OddNeg(k) => {
            let kf = k as f64;
            let gk = g(-kf);
            Some(c(2.0 * (kf + 1.0) / (gk * gk)
                * ((12.0 * kf + 19.0) * g(-2.0 * kf - 3.0) + 4.0 * gk * gk)))
        }
        MassClass::OddPos(_) | MassClass::EvenPos(_) | MassClass::PlusHalf => {
            Some(c(pole_coef(cls.alpha().expect("lattice"))))
        }
        MassClass::EvenNeg(k) => {
            let kf = k as f64;
            Some(c((2.0 * kf + 1.0) * g(-2.0 * kf)
                / (2.0 * (kf + 1.0) * g(0.5 - kf).powi(2))))
        }
        MassClass::MinusHalf => Some(c(-4.0 / PI)),
    }
}

/// Constant of the leading term at A = 0 used for predictions (checked
/// against direct evaluation in the test suite).
pub fn validated_coefficient(cls: MassClass, cp: &CosmologyParams) -> Complex64 {
    match cls {
        MassClass::Zero | MassClass::PlusIh | MassClass::MinusIh => c(0.0),
        MassClass::Generic => {
            let s = Complex64::i() * cp.m / cp.h;
            match generic_branch(s) {
                GenericBranch::Regular => generic_regular(s, 0.0).unwrap_or(c(f64::NAN)),
                _ => generic_pole_coef(s).unwrap_or(c(f64::NAN)),
            }
        }
        MassClass::OddPos(_) | MassClass::EvenPos(_) | MassClass::PlusHalf => {
            c(pole_coef(cls.alpha().expect("lattice")))
        }
        MassClass::OddNeg(_) | MassClass::EvenNeg(_) => c(regular_coef(cls.alpha().expect("lattice"), 0.0)),
        MassClass::MinusHalf => c(-4.0 / PI),
    }
}

/// r-weight w(r) such that the leading tail is proportional to
/// ∫(∂_r rΦ) w(r) dr; used for nondegeneracy checks.
pub(crate) fn class_weight(cls: MassClass, cp: &CosmologyParams, r: f64) -> Complex64 {
    let a2 = (cp.h * r).powi(2);
    let ln1a = (1.0 - a2).ln();
    match cls {
        MassClass::Zero | MassClass::PlusIh => c(1.0),
        MassClass::Generic => {
            let s = Complex64::i() * cp.m / cp.h;
            match generic_branch(s) {
                GenericBranch::Regular => ((s - 2.0) * ln1a).exp() * (1.0 + (1.0 - 2.0 * s) * a2),
                _ => ((-1.0 - s) * ln1a).exp(),
            }
        }
        MassClass::OddPos(_) | MassClass::EvenPos(_) | MassClass::PlusHalf => {
            let al = cls.alpha().expect("lattice");
            c(((al - 1.0) * ln1a).exp())
        }
        MassClass::OddNeg(_) | MassClass::EvenNeg(_) | MassClass::MinusIh => {
            let al = cls.alpha().expect("lattice");
            c(((-al - 2.0) * ln1a).exp() * (1.0 + (2.0 * al + 1.0) * a2))
        }
        MassClass::MinusHalf => c((-1.5 * ln1a).exp()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(m: Complex64) -> CosmologyParams {
        CosmologyParams::new(1.0, m).unwrap()
    }

    #[test]
    fn lattice_tags() {
        let i = Complex64::i();
        assert_eq!(MassClass::classify(&cp(c(0.0))), MassClass::Zero);
        assert_eq!(MassClass::classify(&cp(i)), MassClass::PlusIh);
        assert_eq!(MassClass::classify(&cp(-i)), MassClass::MinusIh);
        assert_eq!(MassClass::classify(&cp(0.5 * i)), MassClass::PlusHalf);
        assert_eq!(MassClass::classify(&cp(-0.5 * i)), MassClass::MinusHalf);
        assert_eq!(MassClass::classify(&cp(2.0 * i)), MassClass::OddPos(1));
        assert_eq!(MassClass::classify(&cp(-2.0 * i)), MassClass::OddNeg(-3));
        assert_eq!(MassClass::classify(&cp(1.5 * i)), MassClass::EvenPos(1));
        assert_eq!(MassClass::classify(&cp(-1.5 * i)), MassClass::EvenNeg(-2));
        assert_eq!(MassClass::classify(&cp(Complex64::new(0.3, 0.1))), MassClass::Generic);
        for l in -9..9 {
            assert_eq!(MassClass::from_ell(l).ell(), Some(l));
        }
    }

    #[test]
    fn huygensian_classes_are_zero() {
        let v = tail_asymptote(MassClass::Zero, &cp(c(0.0)), 0.1, 5.0).unwrap();
        assert_eq!(v, c(0.0));
    }

    #[test]
    fn mismatch_is_rejected() {
        assert!(tail_asymptote(MassClass::Zero, &cp(Complex64::i()), 0.1, 5.0).is_err());
        assert!(tail_asymptote(MassClass::Zero, &cp(c(0.0)), 0.1, 1.0).is_err());
    }

    #[test]
    fn minus_ih_weight_is_constant() {
        let p = cp(-Complex64::i());
        for r in [0.0, 0.1, 0.3] {
            assert!((class_weight(MassClass::MinusIh, &p, r) - 1.0).norm() < 1e-15);
        }
    }
}
