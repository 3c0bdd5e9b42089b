//! The Q(p) summands of the assembly, checked against the expectations they
//! stand for, computed independently from the Gaussian product formulas.

use redd_core::edd_formula::{even_kernel, odd_kernel, Kernel};
use redd_core::exact_arith::{int, rat, rational_to_f64, Rational};
use redd_core::special_functions::expect_pk_product;

fn sigma2(p: i64) -> Rational {
    rat(p, 2 * (p - 1))
}

fn ev(k: i32, l: i32, p: i64) -> f64 {
    expect_pk_product(k, l, &sigma2(p)).unwrap().to_f64()
}

/// `kernel · √π^pi / √(2π) · √((3p−2)/(p−1))`
fn kernel_value(kernel: &Kernel, p: i64) -> f64 {
    let base = kernel.eval(&int(p)).unwrap() / (2.0 * std::f64::consts::PI).sqrt();
    base * ((3 * p - 2) as f64 / (p - 1) as f64).sqrt()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-11 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn odd_kernels() {
    for p in [3, 4] {
        for i in 1..=4 {
            for j in 1..=4 {
                let (i2, j2) = (2 * i as i32, 2 * j as i32);
                // E e^(−u²/2) (P_{2j−1} P_{2i−1} − P_{2i−2} P_{2j})
                let direct = ev(i2 - 1, j2 - 1, p) - ev(i2 - 2, j2, p);
                let via = kernel_value(&odd_kernel(i, j), p);
                assert!(
                    close(direct, via),
                    "p = {p}, (i, j) = ({i}, {j}): {direct} vs {via}"
                );
            }
        }
    }
}

#[test]
fn even_kernels() {
    for p in [3, 4] {
        for i in 0..=3 {
            for j in 0..=3 {
                let (i2, j2) = (2 * i as i32, 2 * j as i32);
                // E e^(−u²/2) (P_{2i} P_{2j} − P_{2i−1} P_{2j+1})
                let direct = ev(i2, j2, p) - ev(i2 - 1, j2 + 1, p);
                let via = kernel_value(&even_kernel(i, j), p);
                assert!(
                    close(direct, via),
                    "p = {p}, (i, j) = ({i}, {j}): {direct} vs {via}"
                );
            }
        }
    }
}

#[test]
fn variance_parametrization() {
    // 1 + σ² = (3p−2)/(2(p−1))
    for p in 2..10 {
        assert_eq!(sigma2(p) + int(1), rat(3 * p - 2, 2 * (p - 1)));
        assert!(rational_to_f64(&sigma2(p)) > 0.5);
    }
}
