use std::fmt;
use std::ops::Mul;

use num_traits::{One, Signed, Zero};

use super::{int, rational_to_f64, ArithError, Rational};

/// Exact scalar `q · π^(h/2)`, optionally times `√2`.
///
/// Half-integer Gamma values and their products and quotients live here.
/// Gaussian integrals against `e^(−x²/2)` pick up a `√2`, which is carried
/// as a flag so that `2` factors never leave Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiScalar {
    q: Rational,
    h: i32,
    sqrt2: bool,
}

impl PiScalar {
    pub fn new(q: Rational, h: i32) -> Self {
        Self::build(q, h, false)
    }

    /// `q · √2 · π^(h/2)`.
    pub fn with_sqrt2(q: Rational, h: i32) -> Self {
        Self::build(q, h, true)
    }

    fn build(q: Rational, h: i32, sqrt2: bool) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Self { q, h, sqrt2 }
        }
    }

    pub fn zero() -> Self {
        Self {
            q: Rational::zero(),
            h: 0,
            sqrt2: false,
        }
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), 0)
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(q, 0)
    }

    /// `√π`.
    pub fn sqrt_pi() -> Self {
        Self::new(Rational::one(), 1)
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// π exponent in half units.
    pub fn h(&self) -> i32 {
        self.h
    }

    pub fn has_sqrt2(&self) -> bool {
        self.sqrt2
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    /// True when both scalars carry the same irrational factor, so that
    /// they can be added in Q.
    pub fn same_irrational_part(&self, other: &Self) -> bool {
        self.is_zero() || other.is_zero() || (self.h == other.h && self.sqrt2 == other.sqrt2)
    }

    /// Sum of two scalars with the same irrational part.
    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if !self.same_irrational_part(other) {
            return Err(ArithError::MixedScalars);
        }
        Ok(Self::build(&self.q + &other.q, self.h, self.sqrt2))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::build(&self.q * c, self.h, self.sqrt2)
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // 1/√2 = √2/2
        let q = if self.sqrt2 {
            self.q.recip() / int(2)
        } else {
            self.q.recip()
        };
        Ok(Self::build(q, -self.h, self.sqrt2))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn neg(&self) -> Self {
        Self::build(-&self.q, self.h, self.sqrt2)
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = rational_to_f64(&self.q) * std::f64::consts::PI.sqrt().powi(self.h);
        if self.sqrt2 {
            v *= std::f64::consts::SQRT_2;
        }
        v
    }
}

impl Mul for &PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        let both = self.sqrt2 && rhs.sqrt2;
        let q = if both {
            &self.q * &rhs.q * int(2)
        } else {
            &self.q * &rhs.q
        };
        PiScalar::build(q, self.h + rhs.h, self.sqrt2 ^ rhs.sqrt2)
    }
}

impl Mul for PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: PiScalar) -> PiScalar {
        &self * &rhs
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)?;
        if self.sqrt2 {
            write!(f, "*sqrt(2)")?;
        }
        match self.h {
            0 => Ok(()),
            1 => write!(f, "*sqrt(pi)"),
            h if h % 2 == 0 => write!(f, "*pi^{}", h / 2),
            h => write!(f, "*pi^({}/2)", h),
        }
    }
}

impl PiScalar {
    pub fn is_negative(&self) -> bool {
        self.q.is_negative()
    }
}
