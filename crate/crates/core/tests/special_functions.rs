use nu_dirac::special_fn::{integrate, integrate_to_infinity, jacobi_eval, laguerre_eval};
use proptest::prelude::*;

fn binom(y: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (y - j as f64) / (j as f64 + 1.0))
}

/// Finite-sum Jacobi value and the sum of term magnitudes.
fn jacobi_sum(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    (0..=n)
        .map(|s| {
            binom(n as f64 + a, n - s)
                * binom(n as f64 + b, s)
                * (0.5 * (x - 1.0)).powi(s as i32)
                * (0.5 * (x + 1.0)).powi((n - s) as i32)
        })
        .fold((0.0, 0.0), |(v, m), t| (v + t, m + t.abs()))
}

fn laguerre_sum(n: usize, a: f64, x: f64) -> (f64, f64) {
    let mut fact = 1.0;
    (0..=n)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            (-1f64).powi(k as i32) * binom(n as f64 + a, n - k) * x.powi(k as i32) / fact
        })
        .fold((0.0, 0.0), |(v, m), t| (v + t, m + t.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jacobi_recurrence_matches_sum(n in 0usize..=8, a in -0.9f64..5.0, b in -0.9f64..5.0, x in -2.0f64..3.0) {
        let (want, mag) = jacobi_sum(n, a, b, x);
        let got = jacobi_eval(n, a, b, x);
        prop_assert!((got - want).abs() <= 1e-10 * want.abs().max(1e-3 * mag), "{got} vs {want}");
    }

    #[test]
    fn laguerre_recurrence_matches_sum(n in 0usize..=8, a in -0.9f64..5.0, x in -2.0f64..3.0) {
        let (want, mag) = laguerre_sum(n, a, x);
        let got = laguerre_eval(n, a, x);
        prop_assert!((got - want).abs() <= 1e-10 * want.abs().max(1e-3 * mag), "{got} vs {want}");
    }
}

/// ∫₋₁¹ (1−x)ᵃ(1+x)ᵇ g(x) dx. Each half is mapped with x = ±(1 − u^p),
/// p = 1/(a+1) resp. 1/(b+1), which cancels the endpoint weight exactly.
fn weighted_jacobi_integral(a: f64, b: f64, g: impl Fn(f64) -> f64) -> f64 {
    let (p, q) = (1.0 / (a + 1.0), 1.0 / (b + 1.0));
    let right = |u: f64| {
        let x = 1.0 - u.powf(p);
        p * (1.0 + x).powf(b) * g(x)
    };
    let left = |u: f64| {
        let x = -1.0 + u.powf(q);
        q * (1.0 - x).powf(a) * g(x)
    };
    integrate(right, 0.0, 1.0, 1e-11).unwrap() + integrate(left, 0.0, 1.0, 1e-11).unwrap()
}

#[test]
fn jacobi_orthogonality() {
    for &(a, b) in &[(0.0, 0.0), (0.5, 1.5), (2.0, 0.3), (-0.5, -0.5), (-0.9, 3.0)] {
        for m in 0..=6 {
            for n in (m + 1)..=6 {
                let v = weighted_jacobi_integral(a, b, |x| jacobi_eval(m, a, b, x) * jacobi_eval(n, a, b, x));
                assert!(v.abs() < 1e-8, "a={a} b={b} m={m} n={n}: {v}");
            }
        }
        let norm = weighted_jacobi_integral(a, b, |x| jacobi_eval(2, a, b, x).powi(2));
        assert!(norm > 1e-3);
    }
}

#[test]
fn laguerre_orthogonality() {
    for &a in &[0.0, 0.7, 2.5] {
        for m in 0..=6 {
            for n in (m + 1)..=6 {
                let f = |x: f64| x.powf(a) * (-x).exp() * laguerre_eval(m, a, x) * laguerre_eval(n, a, x);
                let v = integrate_to_infinity(f, 0.0, 10.0, 1e-11).unwrap();
                assert!(v.abs() < 1e-8, "a={a} m={m} n={n}: {v}");
            }
        }
    }
}

#[test]
fn jacobi_tends_to_laguerre() {
    let (a, c) = (0.8, 2.0);
    let zs: Vec<f64> = (0..10).map(|i| 0.1 + 0.3 * i as f64).collect();
    for n in 0..=3 {
        let gap = |a3: f64| {
            zs.iter()
                .map(|&z| (jacobi_eval(n, a, c / a3, 1.0 - 2.0 * a3 * z) - laguerre_eval(n, a, c * z)).abs())
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (gap(1e-3), gap(1e-4));
        if n == 0 {
            assert_eq!(coarse, 0.0);
            continue;
        }
        assert!(fine * 5.0 <= coarse, "n={n}: {coarse} -> {fine}");
    }
}

#[test]
fn quadrature_examples() {
    assert!((integrate(|_| 1.0, 0.0, 1.0, 1e-10).unwrap() - 1.0).abs() < 1e-10);
    assert!((integrate(|x| x * x, 0.0, 1.0, 1e-10).unwrap() - 1.0 / 3.0).abs() < 1e-10);
    let v = integrate(|x: f64| (-x).exp(), 0.0, 50.0, 1e-8).unwrap();
    assert!((v - 1.0).abs() < 1e-8);
}
