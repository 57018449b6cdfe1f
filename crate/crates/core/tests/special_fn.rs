use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use sphere_riesz::special_fn::{
    assoc_legendre, gauss_legendre_rule, gegenbauer_at_one, gegenbauer_eval, gegenbauer_sequence,
    sphere_surface_area, CompensatedSum,
};
use std::f64::consts::PI;

const NUS: [f64; 6] = [0.25, 0.5, 1.0, 1.5, 2.0, 2.5];

proptest! {
    #[test]
    fn gegenbauer_parity(i in 0usize..6, k in 0usize..=64, t in -1.0f64..=1.0) {
        let nu = NUS[i];
        let (a, b) = (gegenbauer_eval(nu, k, -t).unwrap(), gegenbauer_eval(nu, k, t).unwrap());
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((a - sign * b).abs() <= 1e-12 * b.abs().max(1.0));
    }

    #[test]
    fn gegenbauer_peaks_at_one(i in 0usize..6, k in 0usize..=64, t in -1.0f64..=1.0) {
        let nu = NUS[i];
        let top = gegenbauer_at_one(nu, k).unwrap();
        prop_assert!(gegenbauer_eval(nu, k, t).unwrap().abs() <= top * (1.0 + 1e-12));
    }

    #[test]
    fn legendre_is_gegenbauer_half(k in 0usize..=64, t in -1.0f64..=1.0) {
        let a = gegenbauer_eval(0.5, k, t).unwrap();
        let b = assoc_legendre(k, 0, t).unwrap();
        prop_assert!((a - b).abs() <= 1e-11);
    }

    // C_k^1(cos θ) = sin((k+1)θ) / sin θ
    #[test]
    fn gegenbauer_one_is_chebyshev_u(k in 0usize..=64, theta in 0.05f64..3.09) {
        let want = ((k + 1) as f64 * theta).sin() / theta.sin();
        let got = gegenbauer_eval(1.0, k, theta.cos()).unwrap();
        prop_assert!((got - want).abs() <= 1e-10 * (k as f64 + 1.0));
    }

    #[test]
    fn sequence_matches_pointwise(i in 0usize..6, t in -1.0f64..=1.0) {
        let nu = NUS[i];
        let s = gegenbauer_sequence(nu, 40, t).unwrap();
        for (k, v) in s.iter().enumerate() {
            prop_assert_eq!(*v, gegenbauer_eval(nu, k, t).unwrap());
        }
    }

    // P_l^l(t) = (2l-1)!! (1-t²)^{l/2}
    #[test]
    fn sectoral_legendre(l in 0usize..=20, t in -1.0f64..=1.0) {
        let dfact: f64 = (1..=l).map(|j| (2 * j - 1) as f64).product();
        let want = dfact * (1.0 - t * t).powf(l as f64 / 2.0);
        prop_assert!((assoc_legendre(l, l, t).unwrap() - want).abs() <= 1e-12 * want.abs().max(1.0));
    }
}

#[test]
fn quadrature_exact_to_degree_2m_minus_1() {
    for m in 1..=64 {
        let r = gauss_legendre_rule(m).unwrap();
        for j in 0..2 * m {
            let exact = if j % 2 == 0 { 2.0 / (j as f64 + 1.0) } else { 0.0 };
            let got = r.integrate(|t| t.powi(j as i32));
            assert!((got - exact).abs() <= 1e-10, "m={m} j={j}: {got} vs {exact}");
        }
    }
}

#[test]
fn two_point_rule() {
    let r = gauss_legendre_rule(2).unwrap();
    let s = 1.0 / 3f64.sqrt();
    assert_abs_diff_eq!(r.nodes()[0].abs(), s, epsilon = 1e-15);
    assert_abs_diff_eq!(r.weights()[0], 1.0, epsilon = 1e-15);
}

#[test]
fn surface_areas() {
    assert_abs_diff_eq!(sphere_surface_area(1), 2.0 * PI, epsilon = 1e-14);
    assert_abs_diff_eq!(sphere_surface_area(2), 4.0 * PI, epsilon = 1e-14);
    assert_abs_diff_eq!(sphere_surface_area(3), 2.0 * PI * PI, epsilon = 1e-13);
    assert_abs_diff_eq!(sphere_surface_area(4), 8.0 * PI * PI / 3.0, epsilon = 1e-13);
}

#[test]
fn compensated_sum_beats_naive() {
    let xs = [1e16, 1.0, -1e16, 1.0];
    let c: CompensatedSum = xs.iter().copied().collect();
    assert_eq!(c.value(), 2.0);
}
