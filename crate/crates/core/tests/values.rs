use num_bigint::BigInt;
use redd_core::edd_formula::{complex_edd, expected_redd_eval};
use redd_core::exact_arith::int;

const N4_ROW: [f64; 9] = [4.0, 9.4, 16.26, 24.31, 33.38, 43.38, 54.22, 65.84, 78.19];

/// The closed form `(29p³ − 63p² + 48p − 12)/(2(3p − 2)^(3/2))` in plain f64.
fn n4_closed(p: f64) -> f64 {
    (29.0 * p.powi(3) - 63.0 * p.powi(2) + 48.0 * p - 12.0) / (2.0 * (3.0 * p - 2.0).powf(1.5))
}

#[test]
fn n4_matches_closed_form() {
    for p in 2..=10 {
        let got = expected_redd_eval(4, &int(p)).unwrap();
        assert!((got - n4_closed(p as f64)).abs() < 1e-12 * got, "p = {p}");
    }
}

// The two-decimal row agrees with the exact values under rounding up; under
// round-to-nearest six entries (p = 4, 5, 7, 8, 9, 10) are one unit too high.
#[test]
fn n4_row_is_rounded_up() {
    for (p, want) in (2..=10).zip(N4_ROW) {
        let got = expected_redd_eval(4, &int(p)).unwrap();
        let digits = if p == 3 { 10.0 } else { 100.0 };
        assert_eq!(
            (got * digits - 1e-9).ceil() / digits,
            want,
            "p = {p}: {got}"
        );
    }
}

#[test]
fn n4_complex_degrees() {
    let expected = [4, 15, 40, 85, 156, 259, 400, 585, 820];
    for (p, want) in (2..=10).zip(expected) {
        assert_eq!(complex_edd(4, p), BigInt::from(want));
    }
}

#[test]
fn e_4_3_digits() {
    let v = expected_redd_eval(4, &int(3)).unwrap();
    assert!((v - n4_closed(3.0)).abs() < 1e-13);
    assert!((v - 9.395_117).abs() < 1e-6, "{v}");
}

#[test]
fn e_5_4_value() {
    let v = expected_redd_eval(5, &int(4)).unwrap();
    assert!((v - 32.94).abs() < 0.005, "{v}");
}
