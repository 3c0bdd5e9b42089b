//! Special functions: Pochhammer symbols, Hermite polynomials in both
//! conventions, terminating Kummer and Gauss hypergeometric polynomials,
//! half-integer Gamma values, the normal CDF and error function, exact
//! Gaussian-weight integrals, and Gaussian expectations of Hermite products.
//!
//! Everything exact is computed over Q (plus explicit `√π`/`√2` bookkeeping
//! in [`PiScalar`](crate::exact_arith::PiScalar)); the numeric routines are
//! plain `f64`.

mod gamma;
mod gaussian;
mod hermite;
mod hypergeometric;
mod normal;
pub mod quadrature;

pub use gamma::{gamma_half, gamma_product_half};
pub use gaussian::{expect_hermite_even, expect_pk_product, gaussian_moment_integral, SurdValue};
pub use hermite::{hermite, HermiteKind, PkFunction};
pub use hypergeometric::{gauss_f_poly, kummer_m_poly};
pub use normal::{erf, erfc, std_normal_cdf};

use num_traits::One;
use thiserror::Error;

use crate::exact_arith::{int, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("denominator parameter c = {0} makes (c)_k vanish inside the series")]
    InvalidDenominator(Rational),
    #[error("series does not terminate: no numerator parameter is a non-positive integer")]
    NonTerminating,
    #[error("Gamma argument {0} is not a positive multiple of 1/2")]
    GammaDomain(Rational),
    #[error("weight exponent {0} is not supported (expected 1/2 or 1)")]
    UnsupportedWeight(Rational),
    #[error("variance must be positive, got {0}")]
    NonPositiveVariance(Rational),
    #[error("no closed form for E[P_{0} P_{1} e^(-u^2/2)]")]
    UnsupportedCase(i32, i32),
}

/// Rising factorial `(x)_n = x (x+1) … (x+n−1)`, with `(x)_0 = 1`.
pub trait RisingFactorial: Sized {
    fn rising(&self, n: u32) -> Self;
}

impl RisingFactorial for Rational {
    fn rising(&self, n: u32) -> Self {
        (0..n).fold(Rational::one(), |acc, k| acc * (self + int(k as i64)))
    }
}

impl RisingFactorial for RatFunc {
    fn rising(&self, n: u32) -> Self {
        (0..n).fold(RatFunc::one(), |acc, k| {
            &acc * &(self + &RatFunc::constant(int(k as i64)))
        })
    }
}

/// `(x)_n` for a rational or a rational function.
pub fn pochhammer<T: RisingFactorial>(x: &T, n: u32) -> T {
    x.rising(n)
}
