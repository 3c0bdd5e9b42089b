use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{factorial, int, rat, rational_to_f64, PiScalar, PolyQ, Rational};

use super::{gauss_f_poly, SpecialError};

/// `∫_ℝ f(x) e^(−αx²) dx` for `α ∈ {1/2, 1}`, exactly.
///
/// For `α = 1` the result is a rational multiple of `√π`; for `α = 1/2` it
/// is a rational multiple of `√(2π)`.
pub fn gaussian_moment_integral(f: &PolyQ, alpha: &Rational) -> Result<PiScalar, SpecialError> {
    let half = rat(1, 2);
    let physicist = alpha.is_one();
    if !physicist && *alpha != half {
        return Err(SpecialError::UnsupportedWeight(alpha.clone()));
    }
    let mut total = Rational::zero();
    // moment = ∫ x^(2k) e^(−αx²) / (√π or √(2π))
    let mut moment = Rational::one();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % 2 == 1 {
            continue;
        }
        let k = (i / 2) as i64;
        if k > 0 {
            // Γ(k+1/2)/α^(k+1/2) ratio between consecutive even moments.
            let step = int(2 * k - 1);
            moment *= if physicist { step * &half } else { step };
        }
        total += c * &moment;
    }
    Ok(if physicist {
        PiScalar::new(total, 1)
    } else {
        PiScalar::with_sqrt2(total, 1)
    })
}

fn check_variance(sigma2: &Rational) -> Result<(), SpecialError> {
    if sigma2.is_positive() {
        Ok(())
    } else {
        Err(SpecialError::NonPositiveVariance(sigma2.clone()))
    }
}

/// `E H_{2k}(u)` for `u ~ N(0, σ²)`: `(2k)!/k! · (2σ² − 1)ᵏ`.
pub fn expect_hermite_even(k: u32, sigma2: &Rational) -> Result<Rational, SpecialError> {
    check_variance(sigma2)?;
    let lead = Rational::from_integer(factorial(2 * k) / factorial(k));
    let base = sigma2 * int(2) - int(1);
    Ok(lead * num_traits::pow(base, k as usize))
}

/// `coeff · √radicand` with a non-negative rational radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdValue {
    pub coeff: Rational,
    pub radicand: Rational,
}

impl SurdValue {
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * rational_to_f64(&self.radicand).sqrt()
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*sqrt({})", self.coeff, self.radicand)
    }
}

/// `E[P_k(u) P_l(u) e^(−u²/2)]` for `u ~ N(0, σ²)` in the two closed-form
/// cases: `k, l ≥ 0` with `k + l` even, and `k = −1` with `l` odd.
///
/// Both values are rational multiples of `1/√(1 + σ²)`.
pub fn expect_pk_product(k: i32, l: i32, sigma2: &Rational) -> Result<SurdValue, SpecialError> {
    check_variance(sigma2)?;
    let s1 = sigma2 + int(1);
    let radicand = s1.recip();
    let coeff = if k >= 0 && l >= 0 && (k + l) % 2 == 0 {
        both_polynomial(k as u32, l as u32, &s1)?
    } else if k == -1 && l > 0 && l % 2 == 1 {
        with_cdf_branch((l as u32 - 1) / 2, sigma2, &s1)
    } else {
        return Err(SpecialError::UnsupportedCase(k, l));
    };
    Ok(SurdValue { coeff, radicand })
}

/// `(−1)^N 2^N Γ(N+1/2)/√π / (σ²+1)^N · F(−k, −l; 1/2 − N; (σ²+1)/2)` with
/// `N = (k+l)/2`.
fn both_polynomial(k: u32, l: u32, s1: &Rational) -> Result<Rational, SpecialError> {
    let n = (k + l) / 2;
    // 2^N Γ(N+1/2)/√π = (2N)!/(2^N N!)
    let gamma_part = Rational::new(factorial(2 * n), BigInt::from(2u32).pow(n) * factorial(n));
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let c = rat(1, 2) - int(n as i64);
    let f = gauss_f_poly(&int(-(k as i64)), &int(-(l as i64)), &c)?;
    let fval = f.eval(&(s1 * rat(1, 2)));
    Ok(sign * gamma_part * fval / num_traits::pow(s1.clone(), n as usize))
}

/// `(−1)^(j+1) (2j+1)!/(2ʲ j!) · σ² · (1−σ²)ʲ F(−j, 1/2; 3/2; σ⁴/(σ⁴−1))`,
/// with the hypergeometric sum expanded termwise so `σ² = 1` is regular.
fn with_cdf_branch(j: u32, sigma2: &Rational, s1: &Rational) -> Rational {
    let one_minus = int(1) - sigma2;
    let s4 = sigma2 * sigma2;
    let mut bracket = Rational::zero();
    // Coefficient of the i-th term: (−j)_i (1/2)_i / ((3/2)_i i!) = (−j)_i / ((2i+1) i!).
    let mut rising = Rational::one();
    for i in 0..=j {
        if i > 0 {
            rising *= int(i as i64 - 1 - j as i64) / int(i as i64);
        }
        let coeff = &rising / int(2 * i as i64 + 1);
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        let term = coeff
            * sign
            * num_traits::pow(s4.clone(), i as usize)
            * num_traits::pow(one_minus.clone(), (j - i) as usize)
            / num_traits::pow(s1.clone(), i as usize);
        bracket += term;
    }
    let lead = Rational::new(
        factorial(2 * j + 1),
        BigInt::from(2u32).pow(j) * factorial(j),
    );
    let sign = if j % 2 == 0 { int(-1) } else { int(1) };
    sign * lead * sigma2 * bracket
}
