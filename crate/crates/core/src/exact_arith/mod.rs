//! Exact arithmetic: rationals, univariate polynomials and rational functions
//! in `p` over Q, π-half-power scalars, and the fixed radical extension
//! `Q(p)[s, t]` with `s² = p − 1`, `t² = 3p − 2`.

mod pi_scalar;
mod poly;
mod radical;
mod ratfunc;

pub use pi_scalar::PiScalar;
pub use poly::PolyQ;
pub use radical::{PiGraded, RadicalExpr};
pub use ratfunc::{eval_poly_at, RatFunc};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("rational function denominator vanishes at p = {0}")]
    Pole(Rational),
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation point p = {0} is outside the domain p >= 2")]
    Domain(Rational),
    #[error("π half-exponents {0:?} survive where only exponent 0 may remain")]
    PiResidual(Vec<i32>),
    #[error("cannot add terms carrying different π or √2 factors")]
    MixedScalars,
}

/// Shorthand for the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Converts a rational to the nearest `f64`, keeping precision when the
/// numerator and denominator are individually too large for `f64`.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let Some(v) = q.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    // Fall back to a scaled long division.
    let neg = q.is_negative();
    let num = q.numer().abs();
    let den = q.denom().clone();
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let (n, d) = if shift > 0 {
        (num, den << shift as usize)
    } else {
        (num << (-shift) as usize, den)
    };
    let quotient = (n / d).to_f64().unwrap_or(f64::NAN);
    let v = quotient * 2f64.powi(shift as i32);
    if neg {
        -v
    } else {
        v
    }
}

/// Exact rational conversion of a finite `f64` (dyadic, no rounding).
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}
