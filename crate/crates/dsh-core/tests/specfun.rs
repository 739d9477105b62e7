use std::f64::consts::PI;

use dsh_core::specfun::*;
use num_complex::Complex64;
use proptest::prelude::*;

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

// mpmath, 50 digits
const GAMMA_REF: [(Complex64, Complex64); 7] = [
    (c(2.0, 3.0), c(-0.082395272665611883674, 0.091774287435259314596)),
    (c(-2.5, 0.7), c(-0.15981871636293293015, -0.15756654908151528378)),
    (c(10.3, -4.0), c(-318012.42731951998313, -60450.410879119244734)),
    (c(25.5, 0.0), c(3.0867705405286967828e+24, 0.0)),
    (c(0.1, 20.0), c(-2.4907424588333925776e-16, 1.717414975681725618e-14)),
    (c(-17.3, 1.1), c(-1.9346001260545729295e-16, -1.4821420135934784393e-16)),
    (c(0.001, 0.0), c(999.4237724845954453, 0.0)),
];

const DIGAMMA_REF: [(Complex64, Complex64); 5] = [
    (c(2.5, 0.0), c(0.70315664064524318723, 0.0)),
    (c(2.0, 3.0), c(1.2079807107101508808, 1.1041296805875762097)),
    (c(-3.3, 0.2), c(2.6923275850058860302, 2.2447232305190949383)),
    (c(0.01, -0.5), c(-0.35821668284428109232, -2.7037186317283187188)),
    (c(28.0, 5.0), c(3.3304975115429231505, 0.17983473432423325992)),
];

type HypCase = (f64, f64, f64, f64, f64, f64, f64, f64);
// (a.re, a.im, b.re, b.im, c, z, F.re, F.im), mpmath
const HYP_REF: [HypCase; 14] = [
    (0.5, 0.0, 0.5, 0.0, 2.0, 0.5, 1.0787052023767587133, 0.0),
    (1.25, 0.0, 1.25, 0.0, 2.0, 0.55, 1.8236013180093915093, 0.0),
    (0.5, 0.0, 0.5, 0.0, 1.0, 0.99, 2.3527158167797423215, 0.0),
    (0.5, 0.0, 0.5, 0.0, 2.0, 0.9, 1.1982111053717458132, 0.0),
    (1.5, 0.0, 1.5, 0.0, 1.0, 0.95, 503.06473459643531349, 0.0),
    (2.0, 0.0, 3.0, 0.0, 1.0, 0.9, 28000.000000000025313, 0.0),
    (-0.5, 0.0, -0.5, 0.0, 2.0, 0.999999, 1.1317683427379906523, 0.0),
    (1.0, -0.5, 1.0, -0.5, 2.0, 0.97, -0.26604482393207458205, -1.4416997915692128052),
    (0.0, -0.5, 0.0, -0.5, 1.0, 0.97, 0.74794256493850770115, 0.1349725314376097708),
    (0.5, 0.0, 0.5, 0.0, 1.0, 0.55, 1.2088931441202062594, 0.0),
    (3.0, 0.0, 3.0, 0.0, 2.0, 0.999999, 1.499999499827466056e+24, 0.0),
    (0.25, 0.0, 0.25, 0.0, 1.0, 0.99999999, 1.1803136328612936894, 0.0),
    (2.5, 0.0, 2.5, 0.0, 2.0, 0.7, 40.388630219858734477, 0.0),
    (0.7, 0.0, 1.3, 0.0, 2.9, -0.8, 0.81762771418477724392, 0.0),
];

/// Independent Γ oracle: shift to large argument and use Stirling's series.
fn gamma_stirling(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return PI / ((PI * z).sin() * gamma_stirling(1.0 - z));
    }
    let shift = 40usize;
    let mut prod = c(1.0, 0.0);
    for k in 0..shift {
        prod *= z + k as f64;
    }
    let w = z + shift as f64;
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    let lng = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series;
    lng.exp() / prod
}

#[test]
fn gamma_matches_high_precision_values() {
    for (z, want) in GAMMA_REF {
        let got = gamma(z).unwrap();
        assert!(rel(got, want) < 1e-12, "Γ({z}) = {got}, want {want}");
    }
    assert!((gamma(c(1.5, 0.0)).unwrap().re - PI.sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn gamma_poles_are_errors() {
    for n in 0..5 {
        assert!(gamma(c(-(n as f64), 0.0)).is_err());
        assert!(digamma(c(-(n as f64), 0.0)).is_err());
    }
}

#[test]
fn digamma_matches_high_precision_values() {
    for (z, want) in DIGAMMA_REF {
        let got = digamma(z).unwrap();
        assert!(rel(got, want) < 1e-10, "ψ({z}) = {got}, want {want}");
    }
    // ψ(5/2) = ψ(1/2) + 2 + 2/3
    let half = -0.577_215_664_901_532_9 - 2.0 * 2f64.ln();
    assert!((digamma(c(2.5, 0.0)).unwrap().re - (half + 2.0 + 2.0 / 3.0)).abs() < 1e-14);
}

#[test]
fn hyp2f1_matches_high_precision_values() {
    for (ar, ai, br, bi, cc, z, fr, fi) in HYP_REF {
        let p = Hyp2F1Params::new(c(ar, ai), c(br, bi), c(cc, 0.0)).unwrap();
        let got = hyp2f1(p, c(z, 0.0)).unwrap();
        let want = c(fr, fi);
        assert!(rel(got, want) < 1e-11, "F({ar}+{ai}i,{br}+{bi}i;{cc};{z}) = {got}, want {want}");
    }
    let p = Hyp2F1Params::new(c(0.3, 0.2), c(1.1, -0.4), c(1.7, 0.1)).unwrap();
    let got = hyp2f1(p, c(0.8, 0.0)).unwrap();
    assert!(rel(got, c(1.3915670800995997652, 0.038778812994883854053)) < 1e-11);
    let p = Hyp2F1Params::real(1.5, 0.5, 1.0).unwrap();
    let got = hyp2f1(p, c(0.3, 0.2)).unwrap();
    assert!(rel(got, c(1.2404483008103639636, 0.27348115018739122265)) < 1e-12);
}

#[test]
fn series_examples() {
    let p = Hyp2F1Params::real(0.7, -1.3, 2.2).unwrap();
    assert_eq!(hyp2f1_series(p, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    let p = Hyp2F1Params::real(-1.0, -1.0, 1.0).unwrap();
    let z = c(0.37, 0.1);
    assert!((hyp2f1_series(p, z).unwrap() - (1.0 + z)).norm() < 1e-16);
    let p = Hyp2F1Params::real(0.5, 0.5, 2.0).unwrap();
    assert!((hyp2f1_series(p, c(0.5, 0.0)).unwrap().re - 1.0787052023767587133).abs() < 1e-14);
    assert!(hyp2f1_series(p, c(0.8, 0.0)).is_err());
}

#[test]
fn series_cap_reports_nonconvergence() {
    let p = Hyp2F1Params::real(0.5, 0.5, 2.0).unwrap();
    let cfg = SeriesConfig {
        max_terms: 3,
        ..SeriesConfig::default()
    };
    assert!(matches!(
        hyp2f1_series_with(p, c(0.7, 0.0), cfg),
        Err(dsh_core::DshError::NonConvergence { .. })
    ));
}

#[test]
fn unit_argument_values() {
    let p = Hyp2F1Params::real(0.5, 0.5, 2.0).unwrap();
    let v = hyp2f1_near_one(p, c(1.0, 0.0)).unwrap();
    assert!((v.re - 4.0 / PI).abs() < 1e-12);
    // k = −2: F(−1/2, −1/2; 2; 1) = 32/(9π)
    let p = Hyp2F1Params::real(-0.5, -0.5, 2.0).unwrap();
    assert!((hyp2f1(p, c(1.0, 0.0)).unwrap().re - 32.0 / (9.0 * PI)).abs() < 1e-13);
    let p = Hyp2F1Params::real(-2.0, -2.0, 1.0).unwrap();
    assert_eq!(hyp2f1(p, c(1.0, 0.0)).unwrap(), c(6.0, 0.0));
    let p = Hyp2F1Params::real(0.5, 0.5, 1.0).unwrap();
    assert!(hyp2f1_near_one(p, c(1.0, 0.0)).is_err());
}

#[test]
fn connection_branch_classification() {
    let p = Hyp2F1Params::real(0.5, 0.5, 2.0).unwrap();
    assert_eq!(p.class(), Hyp2F1Class::CEqAbPlusM(1));
    let p = Hyp2F1Params::real(1.5, 1.5, 1.0).unwrap();
    assert_eq!(p.class(), Hyp2F1Class::CEqAbMinusM(2));
    let p = Hyp2F1Params::real(0.5, 0.25, 1.0).unwrap();
    assert_eq!(p.class(), Hyp2F1Class::Generic);
    let p = Hyp2F1Params::real(0.5, 0.5, 1.0 + 1e-11).unwrap();
    assert_eq!(p.class(), Hyp2F1Class::CEqAbPlusM(0));
    assert!(Hyp2F1Params::real(0.5, 0.5, -2.0).is_err());
}

#[test]
fn logarithmic_branches_reject_terminating_parameters() {
    let p = Hyp2F1Params::real(-1.0, 0.5, 1.5).unwrap();
    assert!(matches!(
        hyp2f1_near_one(p, c(0.9, 0.0)),
        Err(dsh_core::DshError::Parameter(_))
    ));
    // the dispatcher takes the polynomial path instead
    assert!((hyp2f1(p, c(0.9, 0.0)).unwrap() - (1.0 - 0.5 / 1.5 * 0.9)).norm() < 1e-15);
}

#[test]
fn m_equals_zero_log_branch_matches_series() {
    // c − a − b = 0: the digamma weights reduce to 2ψ(n+1) − 2ψ(1/2 + n)
    let p = Hyp2F1Params::real(0.5, 0.5, 1.0).unwrap();
    let z = c(0.55, 0.0);
    let a = hyp2f1_series(p, z).unwrap();
    let b = hyp2f1_near_one(p, z).unwrap();
    assert!(rel(b, a) < 1e-12);
}

#[test]
fn generic_near_one_matches_series_at_quarter_mass() {
    // m = iH/4: 1 − im/H = 5/4
    let p = Hyp2F1Params::real(1.25, 1.25, 2.0).unwrap();
    let z = c(0.55, 0.0);
    assert!(rel(hyp2f1_near_one(p, z).unwrap(), hyp2f1_series(p, z).unwrap()) < 1e-10);
}

#[test]
fn terminating_identity() {
    for n in -6..=-1 {
        let nf = n as f64;
        let f2 = hyp2f1(Hyp2F1Params::real(nf + 1.0, nf + 1.0, 2.0).unwrap(), c(1.0, 0.0)).unwrap();
        let f1 = hyp2f1(Hyp2F1Params::real(nf, nf, 1.0).unwrap(), c(1.0, 0.0)).unwrap();
        assert!((2.0 * nf * f2 + f1).norm() < 1e-12, "n = {n}");
    }
}

#[test]
fn polynomial_closed_forms() {
    // F(−n,−n;1;z) = Σ C(n,j)² z^j
    let z = c(0.83, -0.2);
    for n in 0..7u32 {
        let mut want = c(0.0, 0.0);
        for j in 0..=n {
            let b = (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
            want += b * b * z.powu(j);
        }
        let got = hyp2f1(Hyp2F1Params::real(-(n as f64), -(n as f64), 1.0).unwrap(), z).unwrap();
        assert!(rel(got, want) < 1e-14);
    }
}

#[test]
fn unit_argument_limits() {
    // x^{2n−1} F(n,n;1;1−x) → Γ(2n−1)/Γ(n)² and x^{2n−2} F(n,n;2;1−x) → Γ(2n−2)/Γ(n)²
    for n in 2..=4 {
        let nf = n as f64;
        let g = |x: f64| gamma(c(x, 0.0)).unwrap().re;
        let lim1 = g(2.0 * nf - 1.0) / g(nf).powi(2);
        let lim2 = g(2.0 * nf - 2.0) / g(nf).powi(2);
        let eval = |cc: f64, pow: f64, x: f64| {
            let p = Hyp2F1Params::real(nf, nf, cc).unwrap();
            x.powf(pow) * hyp2f1_near_one_w(p, c(x, 0.0)).unwrap().re
        };
        // linear extrapolation in x from x = 1e−4, 1e−5
        let ext = |cc: f64, pow: f64| {
            let (a, b) = (eval(cc, pow, 1e-4), eval(cc, pow, 1e-5));
            b + (b - a) / 9.0
        };
        let v1 = ext(1.0, 2.0 * nf - 1.0);
        let v2 = ext(2.0, 2.0 * nf - 2.0);
        assert!((v1 - lim1).abs() / lim1 < 1e-6, "n={n}: {v1} vs {lim1}");
        assert!((v2 - lim2).abs() / lim2 < 1e-6, "n={n}: {v2} vs {lim2}");
        // the alternative constant Γ(n−1)/Γ(n)² is not the limit
        let alt = g(nf - 1.0) / g(nf).powi(2);
        assert!((v1 - alt).abs() / lim1 > 0.1);
    }
}

#[test]
fn near_integer_offset_uses_log_formula() {
    // c − a − b within the integer band: the log branch and the exact series agree
    let p = Hyp2F1Params::new(c(0.5, 0.0), c(0.5, 0.0), c(2.0 + 5e-10, 0.0)).unwrap();
    let z = c(0.45, 0.0);
    let series = hyp2f1_series(p, z).unwrap();
    let log = hyp2f1_near_one(p, z).unwrap();
    assert!(rel(log, series) < 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_agrees_with_stirling_oracle(re in -12.0f64..25.0, im in -8.0f64..8.0) {
        let z = c(re, im);
        prop_assume!((z - c(re.round(), 0.0)).norm() > 1e-3);
        let got = gamma(z).unwrap();
        let want = gamma_stirling(z);
        prop_assert!(rel(got, want) < 1e-11, "{} vs {}", got, want);
    }

    #[test]
    fn gamma_reflection(re in -6.0f64..6.0, im in -3.0f64..3.0) {
        let z = c(re, im);
        prop_assume!((z - c(re.round(), 0.0)).norm() > 1e-2);
        let v = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (PI * z).sin() / PI;
        prop_assert!((v - 1.0).norm() < 1e-11);
    }

    #[test]
    fn rgamma_is_reciprocal(re in -6.0f64..20.0, im in -3.0f64..3.0) {
        let z = c(re, im);
        prop_assume!((z - c(re.round(), 0.0)).norm() > 1e-3);
        prop_assert!((rgamma(z) * gamma(z).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn digamma_recurrence(re in -8.0f64..20.0, im in -5.0f64..5.0) {
        let z = c(re, im);
        prop_assume!((z - c(re.round(), 0.0)).norm() > 1e-2);
        let lhs = digamma(z + 1.0).unwrap();
        let rhs = digamma(z).unwrap() + 1.0 / z;
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn series_and_connection_agree(
        ar in -1.5f64..2.5, ai in -1.0f64..1.0,
        br in -1.5f64..2.5, bi in -1.0f64..1.0,
        cr in 0.2f64..3.0, ci in -1.0f64..1.0,
        z in 0.4f64..0.6,
    ) {
        let p = Hyp2F1Params::new(c(ar, ai), c(br, bi), c(cr, ci)).unwrap();
        let d = p.c - p.a - p.b;
        prop_assume!((d - c(d.re.round(), 0.0)).norm() > 1e-2);
        let s = hyp2f1_series(p, c(z, 0.0)).unwrap();
        let n = hyp2f1_near_one(p, c(z, 0.0)).unwrap();
        prop_assert!(rel(n, s) < 1e-9, "{} vs {}", n, s);
    }

    #[test]
    fn log_branches_agree_with_series(a in 0.05f64..3.0, b in 0.05f64..3.0, m in -3i32..4, z in 0.42f64..0.58) {
        let cc = a + b + m as f64;
        prop_assume!(cc > 0.05);
        let p = Hyp2F1Params::real(a, b, cc).unwrap();
        let s = hyp2f1_series(p, c(z, 0.0)).unwrap();
        let n = hyp2f1_near_one(p, c(z, 0.0)).unwrap();
        prop_assert!(rel(n, s) < 1e-10, "c-a-b = {}: {} vs {}", m, n, s);
    }

    #[test]
    fn symmetric_in_a_b(a in -2.0f64..3.0, b in -2.0f64..3.0, cc in 0.3f64..3.0, z in -0.4f64..0.95) {
        let f = hyp2f1(Hyp2F1Params::real(a, b, cc).unwrap(), c(z, 0.0)).unwrap();
        let g = hyp2f1(Hyp2F1Params::real(b, a, cc).unwrap(), c(z, 0.0)).unwrap();
        prop_assert!((f - g).norm() <= 1e-9 * (1.0 + f.norm()));
    }

    #[test]
    fn euler_transformation(a in 0.1f64..2.0, b in 0.1f64..2.0, cc in 0.3f64..3.0, z in 0.05f64..0.95) {
        let f = hyp2f1(Hyp2F1Params::real(a, b, cc).unwrap(), c(z, 0.0)).unwrap();
        let g = hyp2f1(Hyp2F1Params::real(cc - a, cc - b, cc).unwrap(), c(z, 0.0)).unwrap()
            * (1.0 - z).powf(cc - a - b);
        prop_assert!((f - g).norm() <= 1e-8 * f.norm());
    }
}
