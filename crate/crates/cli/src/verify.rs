//! The `verify` suite: exact identities, quadrature cross-checks, the
//! published table, structural invariants and (at the full level) Monte
//! Carlo bands.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use redd_core::edd_formula::{
    complex_edd, expected_redd_eval, expected_redd_symbolic, radical_equal,
    structural_decomposition, ReferenceRow, StructuralReport, MAX_TABLE_N,
};
use redd_core::exact_arith::{factorial, int, rat, rational_to_f64, PiScalar, PolyQ, Rational};
use redd_core::goe_expectations::abs_det_eval;
use redd_core::monte_carlo::{estimate, Estimand, McError, McRun};
use redd_core::special_functions::quadrature::{gaussian_expectation, integrate, GAUSSIAN_CUTOFF};
use redd_core::special_functions::{
    expect_hermite_even, expect_pk_product, gamma_half, gauss_f_poly, gaussian_moment_integral,
    hermite, kummer_m_poly, std_normal_cdf, HermiteKind, PkFunction,
};

/// Monte Carlo band half-width in standard errors.
pub const Z_BAND: f64 = 4.0;
pub const GOE_SAMPLES: u64 = 200_000;
pub const TENSOR_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// Passes when `failures` is empty, otherwise reports the first few.
    fn from_failures(name: &str, total: usize, failures: Vec<String>) -> Self {
        if failures.is_empty() {
            return Self::new(name, true, format!("{total} cases"));
        }
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        Self::new(
            name,
            false,
            format!(
                "{} of {total} cases failed: {}",
                failures.len(),
                shown.join("; ")
            ),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub level: Level,
    pub seed: u64,
    pub workers: u32,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "{}/{} checks passed\n",
            self.passed,
            self.checks.len()
        ));
        out
    }
}

pub fn run(level: Level, seed: u64, workers: u32, reference: &[ReferenceRow]) -> Report {
    let mut checks = identity_checks();
    checks.extend(formula_checks(reference));
    if level == Level::Full {
        checks.extend(monte_carlo_checks(seed, workers));
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    Report {
        level,
        seed,
        workers,
        checks,
        passed,
        failed,
    }
}

fn he(k: u32) -> PolyQ {
    hermite(HermiteKind::Probabilist, k)
}

fn phys(k: u32) -> PolyQ {
    hermite(HermiteKind::Physicist, k)
}

fn sign(e: u32) -> Rational {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn same(a: &PiScalar, b: &PiScalar) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    a.q() == b.q() && a.h() == b.h() && a.has_sqrt2() == b.has_sqrt2()
}

fn weight_one(f: &PolyQ) -> PiScalar {
    gaussian_moment_integral(f, &int(1)).expect("weight 1 is supported")
}

/// `∫ G_k P_l e^(−x²/2)`, which reduces to `−∫ He_{k−1} He_l e^(−x²)`.
fn g_p_inner(k: u32, l: u32) -> PiScalar {
    weight_one(&(&he(k - 1) * &he(l))).neg()
}

/// Relative closeness. An exact zero is measured against `scale`.
fn rel_close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    let reference = if b == 0.0 { scale } else { b.abs() };
    (a - b).abs() <= tol * reference
}

fn variances() -> Vec<Rational> {
    vec![
        rat(1, 2),
        int(1),
        rat(3, 2),
        rat(3, 4),
        rat(2, 3),
        rat(5, 2),
    ]
}

/// Polynomial and integral identities behind the closed forms.
pub fn identity_checks() -> Vec<Check> {
    vec![
        contiguous_relation(),
        orthogonality(),
        pairing_values(),
        pairing_antisymmetry(),
        primitive_vs_quadrature(),
        convention_bridge(),
        hermite_parity(),
        hermite_kummer(),
        hermite_expectation_vs_quadrature(),
        pk_product_vs_quadrature(),
    ]
}

fn contiguous_relation() -> Check {
    let x = PolyQ::x();
    let mut fails = Vec::new();
    let mut total = 0;
    for a in 0..=6i64 {
        for b in 0..=6i64 {
            for c in [rat(1, 2), rat(3, 2), rat(5, 2), rat(7, 2)] {
                total += 1;
                let (a, b) = (-a, -b);
                let f = |a: i64, b: i64, c: &Rational| {
                    gauss_f_poly(&int(a), &int(b), c).expect("terminating")
                };
                let lhs = &f(a, b + 1, &c) - &f(a + 1, b, &c);
                let rhs = if a == b {
                    PolyQ::zero()
                } else {
                    (&x * &f(a + 1, b + 1, &(&c + int(1)))).scale(&(int(a - b) / &c))
                };
                if lhs != rhs {
                    fails.push(format!("a={a} b={b} c={c}"));
                }
            }
        }
    }
    Check::from_failures("hypergeometric-contiguous-relation", total, fails)
}

fn orthogonality() -> Check {
    let mut fails = Vec::new();
    for m in 0..=9u32 {
        for n in 0..=9u32 {
            let got = weight_one(&(&he(m) * &he(n)));
            let want = if (m + n) % 2 == 1 {
                PiScalar::zero()
            } else {
                gamma_half(&rat((m + n + 1) as i64, 2))
                    .expect("positive")
                    .scale(&sign(m / 2 + n / 2))
            };
            if !same(&got, &want) {
                fails.push(format!("m={m} n={n}"));
            }
        }
    }
    Check::from_failures("hermite-orthogonality", 100, fails)
}

fn pairing_values() -> Check {
    let mut fails = Vec::new();
    for i in 1..=4u32 {
        for j in 0..=4u32 {
            let got = g_p_inner(2 * i - 1, 2 * j);
            let want = gamma_half(&(int((i + j) as i64) - rat(1, 2)))
                .expect("positive")
                .scale(&sign(i + j));
            if !same(&got, &want) {
                fails.push(format!("i={i} j={j}"));
            }
        }
    }
    Check::from_failures("odd-even-pairing-values", 20, fails)
}

fn pairing_antisymmetry() -> Check {
    let mut fails = Vec::new();
    for k in 1..=9u32 {
        for l in 1..=9u32 {
            let (a, b) = (g_p_inner(k, l), g_p_inner(l, k));
            let ok = if (k + l) % 2 == 0 {
                a.is_zero()
            } else {
                same(&a, &b.neg())
            };
            if !ok {
                fails.push(format!("k={k} l={l}"));
            }
        }
    }
    Check::from_failures("pairing-antisymmetry", 81, fails)
}

fn primitive_vs_quadrature() -> Check {
    let mut fails = Vec::new();
    let mut total = 0;
    for k in 0..=8i32 {
        let (pk, pkm1) = (PkFunction::new(k), PkFunction::new(k - 1));
        for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            total += 1;
            let quad = integrate(|y| pk.eval_damped(y), -GAUSSIAN_CUTOFF, x, 1e-12).value;
            let closed = -pkm1.eval_damped(x);
            if (quad - closed).abs() > 1e-9 {
                fails.push(format!("k={k} x={x}: {quad:e} vs {closed:e}"));
            }
        }
    }
    Check::from_failures("primitive-vs-quadrature", total, fails)
}

fn convention_bridge() -> Check {
    let mut fails = Vec::new();
    for k in 0..=10u32 {
        let h = phys(k);
        let coeffs: Vec<Rational> = (0..=k as usize)
            .map(|i| {
                let c = h.coeff(i);
                if c == int(0) {
                    return c;
                }
                c / Rational::from_integer(BigInt::from(2u32).pow(((i + k as usize) / 2) as u32))
            })
            .collect();
        if PolyQ::new(coeffs) != he(k) {
            fails.push(format!("k={k}"));
        }
    }
    Check::from_failures("hermite-convention-bridge", 11, fails)
}

fn hermite_parity() -> Check {
    let mut fails = Vec::new();
    for k in 0..=10u32 {
        for p in [he(k), phys(k)] {
            if p.reflect() != p.scale(&sign(k)) {
                fails.push(format!("k={k}"));
            }
        }
    }
    Check::from_failures("hermite-parity", 22, fails)
}

fn hermite_kummer() -> Check {
    let x2 = PolyQ::from_ints(&[0, 0, 1]);
    let mut fails = Vec::new();
    for k in 0..=10u32 {
        let kk = k as i64;
        let odd_lead = Rational::from_integer(factorial(2 * k + 1) * 2 / factorial(k)) * sign(k);
        let m_odd = kummer_m_poly(-kk, &rat(3, 2)).expect("terminating");
        if (&PolyQ::x() * &m_odd.compose(&x2)).scale(&odd_lead) != phys(2 * k + 1) {
            fails.push(format!("odd k={k}"));
        }
        let even_lead = Rational::from_integer(factorial(2 * k) / factorial(k)) * sign(k);
        let m_even = kummer_m_poly(-kk, &rat(1, 2)).expect("terminating");
        if m_even.compose(&x2).scale(&even_lead) != phys(2 * k) {
            fails.push(format!("even k={k}"));
        }
    }
    Check::from_failures("hermite-as-kummer", 22, fails)
}

fn hermite_expectation_vs_quadrature() -> Check {
    let mut fails = Vec::new();
    let mut total = 0;
    for s2 in variances() {
        let s2f = rational_to_f64(&s2);
        for k in 0..=6u32 {
            total += 1;
            let exact = rational_to_f64(&expect_hermite_even(k, &s2).expect("σ² > 0"));
            let h = phys(2 * k);
            let quad = gaussian_expectation(|u| h.eval_f64(u), s2f);
            let scale = gaussian_expectation(|u| h.eval_f64(u).powi(2), s2f).sqrt();
            if !rel_close(quad, exact, 1e-8, scale) {
                fails.push(format!("k={k} s2={s2}: {quad:e} vs {exact:e}"));
            }
        }
    }
    Check::from_failures("hermite-expectation-vs-quadrature", total, fails)
}

fn pk_product_vs_quadrature() -> Check {
    let mut fails = Vec::new();
    let mut total = 0;
    let mut pairs: Vec<(i32, i32)> = (0..=7)
        .flat_map(|k| (0..=7).map(move |l| (k, l)))
        .filter(|(k, l)| (k + l) % 2 == 0)
        .collect();
    pairs.extend((1..=9).step_by(2).map(|l| (-1, l)));
    for s2 in variances() {
        let s2f = rational_to_f64(&s2);
        for &(k, l) in &pairs {
            total += 1;
            let exact = expect_pk_product(k, l, &s2)
                .expect("supported pair")
                .to_f64();
            let (pk, pl) = (PkFunction::new(k), PkFunction::new(l));
            // P_{-1} carries the damping itself, so it swaps roles with P_l.
            let quad = if k < 0 {
                gaussian_expectation(|u| pk.eval_damped(u) * pl.eval(u), s2f)
            } else {
                gaussian_expectation(|u| pk.eval(u) * pl.eval_damped(u), s2f)
            };
            if !rel_close(quad, exact, 1e-8, 0.0) {
                fails.push(format!("k={k} l={l} s2={s2}: {quad:e} vs {exact:e}"));
            }
        }
    }
    Check::from_failures("pk-product-vs-quadrature", total, fails)
}

/// Published rows, structure and values of the assembled formula.
pub fn formula_checks(reference: &[ReferenceRow]) -> Vec<Check> {
    let mut checks: Vec<Check> = (2..=MAX_TABLE_N).map(structure_check).collect();
    checks.extend(reference_row_checks(reference));
    checks.push(value_at_two());
    checks.push(bounds());
    checks.push(complex_count_table());
    checks.push(value_table());
    checks.push(small_abs_det_closed_forms());
    checks
}

fn structure_check(n: u32) -> Check {
    let name = format!("structure-n{n}");
    match structural_decomposition(n) {
        Ok(StructuralReport::Odd { .. }) if n % 2 == 1 => {
            Check::new(name, true, "pi cancels; lies in Q(p)(sqrt((p-1)(3p-2)))")
        }
        Ok(StructuralReport::Even { .. }) if n % 2 == 0 => {
            Check::new(name, true, "pi cancels; lies in Q(p)(sqrt(3p-2))")
        }
        Ok(other) => Check::new(name, false, format!("wrong parity class: {other:?}")),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

/// One check per published row `n = 2..9`, named after the row.
fn reference_row_checks(rows: &[ReferenceRow]) -> Vec<Check> {
    (2..=9u32)
        .map(|n| {
            let name = format!("reference-row-n{n}");
            let Some(row) = rows.iter().find(|r| r.n == n) else {
                return Check::new(name, false, format!("row n = {n} missing from fixture"));
            };
            let expected = match row.to_radical() {
                Ok(e) => e,
                Err(e) => return Check::new(name, false, e.to_string()),
            };
            match expected_redd_symbolic(n) {
                Ok(got) if radical_equal(&got.expr, &expected) => {
                    Check::new(name, true, "assembled formula equals the published row")
                }
                Ok(_) => Check::new(
                    name,
                    false,
                    format!("row n = {n} differs from the assembled formula"),
                ),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

fn value_at_two() -> Check {
    let mut fails = Vec::new();
    for n in 2..=MAX_TABLE_N {
        let got =
            expected_redd_symbolic(n).and_then(|e| Ok(e.expr.eval_exact_if_rational(&int(2))?));
        if !matches!(&got, Ok(Some(v)) if *v == int(n as i64)) {
            fails.push(format!("n={n}: {got:?}"));
        }
    }
    Check::from_failures("value-at-p2-equals-n", (MAX_TABLE_N - 1) as usize, fails)
}

fn bounds() -> Check {
    let mut fails = Vec::new();
    let mut total = 0;
    for n in 2..=MAX_TABLE_N {
        for p in 2..=10u64 {
            total += 1;
            let v = expected_redd_eval(n, &int(p as i64)).unwrap_or(f64::NAN);
            let d = complex_edd(n, p).to_f64().unwrap_or(f64::INFINITY);
            if !(v >= 1.0 - 1e-9 && v <= d * (1.0 + 1e-12)) {
                fails.push(format!("n={n} p={p}: {v} vs D={d}"));
            }
        }
    }
    Check::from_failures("between-one-and-complex-count", total, fails)
}

fn complex_count_table() -> Check {
    let want = [4u32, 15, 40, 85, 156, 259, 400, 585, 820];
    let fails = (2..=10u64)
        .zip(want)
        .filter(|&(p, w)| complex_edd(4, p) != BigInt::from(w))
        .map(|(p, w)| format!("p={p}: {} vs {w}", complex_edd(4, p)))
        .collect();
    Check::from_failures("complex-count-n4", want.len(), fails)
}

/// The published `E(4, p)` values, each within `0.01` of the exact value.
fn value_table() -> Check {
    let want = [4.0, 9.4, 16.26, 24.31, 33.38, 43.38, 54.22, 65.84, 78.19];
    let fails = (2..=10i64)
        .zip(want)
        .filter_map(|(p, w)| {
            let v = expected_redd_eval(4, &int(p)).unwrap_or(f64::NAN);
            ((v - w).abs() > 0.01 || v.is_nan()).then(|| format!("p={p}: {v} vs {w}"))
        })
        .collect();
    Check::from_failures("value-table-n4-within-0.01", want.len(), fails)
}

/// `I_1(u) = −u + √(2/π) e^(−u²/2) + 2uΦ(u)` and `I_2(0) = √2 − 1/2`.
fn small_abs_det_closed_forms() -> Check {
    let mut fails = Vec::new();
    let mut total = 0;
    for i in -12..=12 {
        total += 1;
        let u = i as f64 / 4.0;
        let analytic = -u
            + (2.0 / std::f64::consts::PI).sqrt() * (-u * u / 2.0).exp()
            + 2.0 * u * std_normal_cdf(u);
        let quad = gaussian_expectation(|b| (b - u).abs(), 1.0);
        let got = abs_det_eval(1, u);
        if (got - analytic).abs() > 1e-9 || (got - quad).abs() > 1e-9 {
            fails.push(format!("I_1({u}) = {got} vs {analytic}, {quad}"));
        }
    }
    total += 1;
    let i2 = abs_det_eval(2, 0.0);
    if (i2 - (2f64.sqrt() - 0.5)).abs() > 1e-9 {
        fails.push(format!("I_2(0) = {i2}"));
    }
    Check::from_failures("abs-det-small-closed-forms", total, fails)
}

fn mc_run(est: &Estimand, samples: u64, seed: u64, workers: u32) -> Result<McRun, McError> {
    estimate(est, samples, seed, workers)
}

fn band(mean: f64, stderr: f64, reference: f64) -> (bool, f64) {
    let z = if stderr > 0.0 {
        (mean - reference) / stderr
    } else if mean == reference {
        0.0
    } else {
        f64::INFINITY
    };
    (z.abs() <= Z_BAND, z)
}

/// Monte Carlo bands. Check `i` in this list draws from seed `seed + i`, so
/// the two routes to `E(n, p)` are independent.
pub fn monte_carlo_checks(seed: u64, workers: u32) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut next_seed = seed;
    let mut take_seed = || {
        let s = next_seed;
        next_seed = next_seed.wrapping_add(1);
        s
    };

    for n in 1..=5usize {
        for u in [0.0, 0.5, 1.0] {
            let name = format!("mc-goe-absdet-n{n}-u{u}");
            let est = Estimand::GoeAbsDet { n, u, sigma2: 1.0 };
            checks.push(match mc_run(&est, GOE_SAMPLES, take_seed(), workers) {
                Ok(r) => {
                    let reference = abs_det_eval(n as u32, u);
                    let (ok, z) = band(r.result.mean, r.result.stderr, reference);
                    Check::new(
                        name,
                        ok,
                        format!("mean {:.6} vs {reference:.6}, z = {z:.3}", r.result.mean),
                    )
                }
                Err(e) => Check::new(name, false, e.to_string()),
            });
        }
    }

    for n in 2..=6usize {
        for p in 2..=4u64 {
            let reference = expected_redd_eval(n as u32, &int(p as i64)).unwrap_or(f64::NAN);
            let plain = mc_run(
                &Estimand::ReddGoeRoute { n, p },
                GOE_SAMPLES,
                take_seed(),
                workers,
            );
            let rescaled = mc_run(
                &Estimand::ReddGoeRouteRescaled { n, p },
                GOE_SAMPLES,
                take_seed(),
                workers,
            );
            let name = format!("mc-goe-route-n{n}-p{p}");
            checks.push(match &plain {
                Ok(r) => {
                    let (ok, z) = band(r.result.mean, r.result.stderr, reference);
                    Check::new(
                        name,
                        ok,
                        format!("mean {:.6} vs {reference:.6}, z = {z:.3}", r.result.mean),
                    )
                }
                Err(e) => Check::new(name, false, e.to_string()),
            });
            let name = format!("mc-goe-route-rescaled-n{n}-p{p}");
            checks.push(match (&plain, &rescaled) {
                (Ok(a), Ok(b)) => {
                    let (a, b) = (&a.result, &b.result);
                    let combined = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
                    let (ok, z) = band(b.mean, combined, a.mean);
                    Check::new(
                        name,
                        ok,
                        format!("mean {:.6} vs {:.6}, z = {z:.3}", b.mean, a.mean),
                    )
                }
                (Err(e), _) | (_, Err(e)) => Check::new(name, false, e.to_string()),
            });
        }
    }

    for p in 2..=5u64 {
        let name = format!("mc-tensor-n2-p{p}");
        let est = Estimand::ReddN2 { n: 2, p };
        checks.push(match mc_run(&est, TENSOR_SAMPLES, take_seed(), workers) {
            Ok(r) => tensor_check(name, p, &r),
            Err(e) => Check::new(name, false, e.to_string()),
        });
    }
    checks
}

fn tensor_check(name: String, p: u64, run: &McRun) -> Check {
    let reference = ((3 * p - 2) as f64).sqrt();
    let (in_band, z) = band(run.result.mean, run.result.stderr, reference);
    let hist = run.histogram.clone().unwrap_or_default();
    let bad: Vec<u64> = hist
        .bins
        .keys()
        .copied()
        .filter(|&c| c % 2 != p % 2 || c < 1 || c > p)
        .collect();
    let exact_two = p != 2 || hist.bins.keys().all(|&c| c == 2);
    let mut detail = format!("mean {:.6} vs {reference:.6}, z = {z:.3}", run.result.mean);
    if !bad.is_empty() {
        detail.push_str(&format!("; counts violating parity or bounds: {bad:?}"));
    }
    if hist.total() != run.result.n_samples {
        detail.push_str("; histogram total mismatch");
    }
    let ok = in_band && bad.is_empty() && exact_two && hist.total() == run.result.n_samples;
    Check::new(name, ok, detail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use redd_core::edd_formula::builtin_fixture;

    #[test]
    fn fast_suite_passes() {
        let r = run(Level::Fast, 0, 1, &builtin_fixture());
        assert!(r.checks.len() >= 20);
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn missing_row_fails_by_name() {
        let rows: Vec<_> = builtin_fixture().into_iter().filter(|r| r.n != 6).collect();
        let checks = reference_row_checks(&rows);
        let bad: Vec<_> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(bad, ["reference-row-n6"]);
    }

    #[test]
    fn band_handles_zero_stderr() {
        assert_eq!(band(2.0, 0.0, 2.0), (true, 0.0));
        assert!(!band(2.0, 0.0, 3.0).0);
    }
}
