use redd_core::exact_arith::{factorial, int, rat, rational_to_f64, PiScalar, PolyQ, Rational};
use redd_core::special_functions::quadrature::{gaussian_expectation, integrate, GAUSSIAN_CUTOFF};
use redd_core::special_functions::{
    erf, expect_hermite_even, expect_pk_product, gamma_half, gauss_f_poly,
    gaussian_moment_integral, hermite, kummer_m_poly, std_normal_cdf, HermiteKind, PkFunction,
};

fn he(k: u32) -> PolyQ {
    hermite(HermiteKind::Probabilist, k)
}

fn phys(k: u32) -> PolyQ {
    hermite(HermiteKind::Physicist, k)
}

fn same(a: &PiScalar, b: &PiScalar) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    a.q() == b.q() && a.h() == b.h() && a.has_sqrt2() == b.has_sqrt2()
}

fn sign(e: u32) -> Rational {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `∫ f e^(−x²) dx` exactly.
fn weight_one(f: &PolyQ) -> PiScalar {
    gaussian_moment_integral(f, &int(1)).unwrap()
}

#[test]
fn contiguous_relation() {
    let x = PolyQ::x();
    for a in 0..=6i64 {
        for b in 0..=6i64 {
            for c in [rat(1, 2), rat(3, 2), rat(5, 2), rat(7, 2)] {
                let (a, b) = (-a, -b);
                let lhs = &gauss_f_poly(&int(a), &int(b + 1), &c).unwrap()
                    - &gauss_f_poly(&int(a + 1), &int(b), &c).unwrap();
                let rhs = if a == b {
                    PolyQ::zero()
                } else {
                    let f = gauss_f_poly(&int(a + 1), &int(b + 1), &(&c + int(1))).unwrap();
                    (&x * &f).scale(&(int(a - b) / &c))
                };
                assert_eq!(lhs, rhs, "a = {a}, b = {b}, c = {c}");
            }
        }
    }
}

#[test]
fn orthogonality_weight_one() {
    for m in 0..=9u32 {
        for n in 0..=9u32 {
            let got = weight_one(&(&he(m) * &he(n)));
            let want = if (m + n) % 2 == 1 {
                PiScalar::zero()
            } else {
                gamma_half(&rat((m + n + 1) as i64, 2))
                    .unwrap()
                    .scale(&sign(m / 2 + n / 2))
            };
            assert!(same(&got, &want), "m = {m}, n = {n}: {got:?} vs {want:?}");
        }
    }
}

/// `⟨G_k, P_l⟩ = −∫ He_{k−1} He_l e^(−x²)` for `k ≥ 1`.
fn g_p_inner(k: u32, l: u32) -> PiScalar {
    weight_one(&(&he(k - 1) * &he(l))).neg()
}

#[test]
fn odd_even_pairing_values() {
    for i in 1..=4u32 {
        for j in 0..=4u32 {
            let got = g_p_inner(2 * i - 1, 2 * j);
            let want = gamma_half(&(int((i + j) as i64) - rat(1, 2)))
                .unwrap()
                .scale(&sign(i + j));
            assert!(same(&got, &want), "i = {i}, j = {j}");
        }
    }
}

#[test]
fn pairing_antisymmetry_and_parity_zero() {
    for k in 1..=9u32 {
        for l in 1..=9u32 {
            let a = g_p_inner(k, l);
            let b = g_p_inner(l, k);
            if (k + l) % 2 == 0 {
                assert!(a.is_zero(), "k = {k}, l = {l}");
            } else {
                assert!(same(&a, &b.neg()), "k = {k}, l = {l}");
            }
        }
    }
}

#[test]
fn primitive_closed_form_vs_quadrature() {
    for k in 0..=8i32 {
        let pk = PkFunction::new(k);
        let pkm1 = PkFunction::new(k - 1);
        for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let quad = integrate(|y| pk.eval_damped(y), -GAUSSIAN_CUTOFF, x, 1e-12).value;
            let closed = -pkm1.eval_damped(x);
            assert!(
                (quad - closed).abs() <= 1e-9,
                "k = {k}, x = {x}: {quad} vs {closed}"
            );
        }
    }
}

#[test]
fn primitive_limit_at_infinity() {
    let total = integrate(
        |y| PkFunction::new(0).eval_damped(y),
        -GAUSSIAN_CUTOFF,
        GAUSSIAN_CUTOFF,
        1e-12,
    )
    .value;
    assert!((total - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-10);
    for k in 1..=6 {
        let v = integrate(
            |y| PkFunction::new(k).eval_damped(y),
            -GAUSSIAN_CUTOFF,
            GAUSSIAN_CUTOFF,
            1e-12,
        )
        .value;
        assert!(v.abs() < 1e-10, "k = {k}");
    }
}

#[test]
fn convention_bridge() {
    // He_k(x) = 2^(−k/2) H_k(x/√2): coefficient i of the right side is
    // h_i · 2^(−(i+k)/2), and i ≡ k (mod 2).
    for k in 0..=10u32 {
        let h = phys(k);
        let coeffs: Vec<Rational> = (0..=k as usize)
            .map(|i| {
                let c = h.coeff(i);
                if c == int(0) {
                    return c;
                }
                let e = (i + k as usize) / 2;
                c / Rational::from_integer(num_bigint::BigInt::from(2u32).pow(e as u32))
            })
            .collect();
        assert_eq!(PolyQ::new(coeffs), he(k), "k = {k}");
    }
}

#[test]
fn hermite_parity() {
    for k in 0..=10u32 {
        for p in [he(k), phys(k)] {
            assert_eq!(p.reflect(), p.scale(&sign(k)), "k = {k}");
        }
    }
}

#[test]
fn hermite_as_kummer() {
    let x2 = PolyQ::from_ints(&[0, 0, 1]);
    for k in 0..=10u32 {
        let kk = k as i64;
        let odd_lead = Rational::from_integer(factorial(2 * k + 1) * 2 / factorial(k)) * sign(k);
        let odd =
            (&PolyQ::x() * &kummer_m_poly(-kk, &rat(3, 2)).unwrap().compose(&x2)).scale(&odd_lead);
        assert_eq!(odd, phys(2 * k + 1), "odd k = {k}");
        let even_lead = Rational::from_integer(factorial(2 * k) / factorial(k)) * sign(k);
        let even = kummer_m_poly(-kk, &rat(1, 2))
            .unwrap()
            .compose(&x2)
            .scale(&even_lead);
        assert_eq!(even, phys(2 * k), "even k = {k}");
    }
}

#[test]
fn cdf_and_error_function() {
    for i in -40..=40 {
        let x = i as f64 / 8.0;
        assert!(
            (2.0 * std_normal_cdf(x) - 1.0 - erf(x / 2f64.sqrt())).abs() < 1e-12,
            "x = {x}"
        );
    }
    // erf(x) = (2x/√π) M(1/2, 3/2, −x²), summed to depth 30
    for i in -10..=10 {
        let x = i as f64 / 10.0;
        let (mut term, mut sum) = (1.0, 1.0);
        for k in 0..30 {
            let kf = k as f64;
            term *= (0.5 + kf) / (1.5 + kf) * (-x * x) / (kf + 1.0);
            sum += term;
        }
        let series = 2.0 * x / std::f64::consts::PI.sqrt() * sum;
        assert!((series - erf(x)).abs() < 1e-10, "x = {x}");
    }
}

fn variances() -> Vec<Rational> {
    // includes σ² = p/(2(p−1)) for p = 3, 4
    vec![
        rat(1, 2),
        int(1),
        rat(3, 2),
        rat(3, 4),
        rat(2, 3),
        rat(5, 2),
    ]
}

/// Relative tolerance. Exact zeros (the `(2σ² − 1)^k` factor at σ² = 1/2)
/// are measured against `scale`, the root mean square of the integrand.
fn rel_close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    let reference = if b == 0.0 { scale } else { b.abs() };
    (a - b).abs() <= tol * reference
}

#[test]
fn even_hermite_expectation_vs_quadrature() {
    for s2 in variances() {
        for k in 0..=6u32 {
            let exact = rational_to_f64(&expect_hermite_even(k, &s2).unwrap());
            let h = phys(2 * k);
            let s2f = rational_to_f64(&s2);
            let quad = gaussian_expectation(|u| h.eval_f64(u), s2f);
            let scale = gaussian_expectation(|u| h.eval_f64(u).powi(2), s2f).sqrt();
            assert!(
                rel_close(quad, exact, 1e-8, scale),
                "k = {k}, σ² = {s2}: {quad} vs {exact}"
            );
        }
    }
}

#[test]
fn pk_product_expectation_vs_quadrature() {
    for s2 in variances() {
        let s2f = rational_to_f64(&s2);
        for k in 0..=7i32 {
            for l in 0..=7i32 {
                if (k + l) % 2 == 1 {
                    continue;
                }
                let exact = expect_pk_product(k, l, &s2).unwrap().to_f64();
                let (pk, pl) = (PkFunction::new(k), PkFunction::new(l));
                let quad = gaussian_expectation(|u| pk.eval(u) * pl.eval_damped(u), s2f);
                assert!(
                    rel_close(quad, exact, 1e-8, 0.0),
                    "k = {k}, l = {l}, σ² = {s2}"
                );
            }
        }
        for l in (1..=9i32).step_by(2) {
            let exact = expect_pk_product(-1, l, &s2).unwrap().to_f64();
            let (pm, pl) = (PkFunction::new(-1), PkFunction::new(l));
            let quad = gaussian_expectation(|u| pm.eval_damped(u) * pl.eval(u), s2f);
            assert!(
                rel_close(quad, exact, 1e-8, 0.0),
                "k = -1, l = {l}, σ² = {s2}"
            );
        }
    }
}

#[test]
fn unit_weight_pk_product() {
    // k = l = 0: E e^(−u²/2) = 1/√(1+σ²)
    for s2 in variances() {
        let v = expect_pk_product(0, 0, &s2).unwrap().to_f64();
        assert!((v - 1.0 / (1.0 + rational_to_f64(&s2)).sqrt()).abs() < 1e-15);
    }
}
