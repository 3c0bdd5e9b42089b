use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::exact_arith::{factorial, int, PiScalar, Rational};

use super::SpecialError;

/// `Γ(x)` for `x ∈ {1/2, 1, 3/2, 2, …}`: `(x−1)!` at integers and
/// `(2k)!/(4ᵏ k!) · √π` at `x = k + 1/2`.
pub fn gamma_half(x: &Rational) -> Result<PiScalar, SpecialError> {
    let twice = x * int(2);
    if !twice.is_integer() || !x.is_positive() {
        return Err(SpecialError::GammaDomain(x.clone()));
    }
    let twice = twice
        .to_integer()
        .to_u32()
        .ok_or_else(|| SpecialError::GammaDomain(x.clone()))?;
    if twice % 2 == 0 {
        return Ok(PiScalar::rational(Rational::from_integer(factorial(
            twice / 2 - 1,
        ))));
    }
    let k = (twice - 1) / 2;
    let q = Rational::new(factorial(2 * k), BigInt::from(4u32).pow(k) * factorial(k));
    Ok(PiScalar::new(q, 1))
}

/// `∏_{i=1}^{n} Γ(i/2)`.
pub fn gamma_product_half(n: u32) -> PiScalar {
    (1..=n).fold(PiScalar::one(), |acc, i| {
        &acc * &gamma_half(&Rational::new(BigInt::from(i), BigInt::from(2))).expect("positive")
    })
}
