use dsh_core::wave::*;
use proptest::prelude::*;

fn bump(eps: f64) -> RadialBump {
    RadialBump::new(eps, 1.0).unwrap()
}

#[test]
fn sphere_average_reference_values() {
    // mpmath quadrature over the polar angle
    let b = bump(0.4);
    assert!((spherical_mean(&b, 0.3, 0.25) - 0.076156017316295279334).abs() < 1e-13);
    assert!((wave_potential(&b, 0.3, 0.25) - 0.019039004329073819834).abs() < 1e-13);
    assert!((spherical_mean(&b, 0.2, 0.5) - 0.0045451745382277761262).abs() < 1e-13);
    assert!((wave_potential(&b, 0.2, 0.5) - 0.0022725872691138880631).abs() < 1e-13);
}

#[test]
fn strong_huygens_outside_shell() {
    let b = bump(0.1);
    for s in [0.05, 0.15, 0.41, 0.6] {
        assert_eq!(wave_solution(&b, 0.25, s), 0.0, "s = {s}");
    }
    assert_ne!(wave_solution(&b, 0.25, 0.2), 0.0);
    // at the origin the sphere of radius s sees only φ(s)
    assert_eq!(wave_solution(&b, 0.0, 0.2), 0.0);
}

#[test]
fn bump_derivative_matches_difference() {
    let b = bump(0.3);
    for r in [0.01, 0.1, 0.2, 0.28] {
        let h = 1e-6;
        let fd = (b.value(r + h) - b.value(r - h)) / (2.0 * h);
        assert!((fd - b.derivative(r)).abs() < 1e-6 * (1.0 + fd.abs()), "r = {r}");
    }
    assert_eq!(b.derivative(0.3), 0.0);
    assert_eq!(b.derivative(0.0), 0.0);
}

#[test]
fn flat_laplacian_dispatches() {
    let b = bump(0.3);
    let p = FlatLaplacian;
    assert_eq!(p.potential(&b, 0.2, 0.1), wave_potential(&b, 0.2, 0.1));
    assert_eq!(p.solution(&b, 0.2, 0.1), wave_solution(&b, 0.2, 0.1));
    assert_eq!(p.potential_dr(&b, 0.2, 0.1), wave_potential_dr(&b, 0.2, 0.1));
}

#[test]
fn potential_solves_the_wave_equation() {
    let b = bump(0.3);
    let h = 2e-3;
    for (r, s) in [(0.2, 0.15), (0.35, 0.1), (0.25, 0.3)] {
        let v = |r: f64, s: f64| wave_potential(&b, r, s);
        let v_ss = (v(r, s + h) - 2.0 * v(r, s) + v(r, s - h)) / (h * h);
        let v_rr = (v(r + h, s) - 2.0 * v(r, s) + v(r - h, s)) / (h * h);
        let v_r = (v(r + h, s) - v(r - h, s)) / (2.0 * h);
        let residual = v_ss - v_rr - 2.0 * v_r / r;
        assert!(residual.abs() < 1e-3 * (1.0 + v_ss.abs()), "({r},{s}): {residual}");
    }
}

proptest! {
    #[test]
    fn solution_is_time_derivative(r in 0.05f64..0.6, s in 0.01f64..0.6) {
        let b = bump(0.35);
        let h = 1e-5;
        let fd = (wave_potential(&b, r, s + h) - wave_potential(&b, r, s - h)) / (2.0 * h);
        prop_assert!((fd - wave_solution(&b, r, s)).abs() < 1e-7);
    }

    #[test]
    fn radial_derivative_matches_difference(r in 0.05f64..0.6, s in 0.01f64..0.6) {
        let b = bump(0.35);
        let h = 1e-5;
        let fd = (wave_potential(&b, r + h, s) - wave_potential(&b, r - h, s)) / (2.0 * h);
        prop_assert!((fd - wave_potential_dr(&b, r, s)).abs() < 1e-7);
    }

    #[test]
    fn potential_is_linear_in_amplitude(r in 0.0f64..0.6, s in 0.0f64..0.6, k in -3.0f64..3.0) {
        let b = bump(0.35);
        let lhs = wave_potential(&b.scaled(k), r, s);
        let rhs = k * wave_potential(&b, r, s);
        prop_assert!((lhs - rhs).abs() <= 1e-14 * (1.0 + rhs.abs()));
    }

    #[test]
    fn initial_data_recovered(r in 0.0f64..0.5) {
        let b = bump(0.35);
        prop_assert_eq!(wave_potential(&b, r, 0.0), 0.0);
        prop_assert!((wave_solution(&b, r, 0.0) - b.value(r)).abs() < 1e-16);
    }
}
