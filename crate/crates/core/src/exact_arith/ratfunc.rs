use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::forward_owned;
use super::{rational_to_f64, ArithError, PolyQ, Rational};

/// Reduced rational function `num / den` in one variable over Q.
///
/// Canonical form: `den` is monic, `gcd(num, den) = 1`, and the zero function
/// is `0 / 1`. Two canonical values are equal iff they are the same function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: PolyQ,
    den: PolyQ,
}

impl RatFunc {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = PolyQ::gcd(&num, &den);
            if g.degree() == Some(0) {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lc = den.leading().expect("nonzero denominator").recip();
        Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            num: PolyQ::constant(c),
            den: PolyQ::one(),
        }
    }

    /// The variable `p` itself.
    pub fn var() -> Self {
        Self::from_poly(PolyQ::x())
    }

    pub fn from_poly(p: PolyQ) -> Self {
        Self {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_canonical(&self) -> bool {
        let c = Self::canonical(self.num.clone(), self.den.clone());
        &c == self
    }

    /// Returns the polynomial if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&PolyQ> {
        (self.den.degree() == Some(0)).then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // Powers of a reduced fraction stay reduced.
        Ok(Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ArithError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: &Rational) -> Result<f64, ArithError> {
        self.eval(x).map(|v| rational_to_f64(&v))
    }

    /// `self(arg)` for a rational-function argument.
    pub fn compose(&self, arg: &Self) -> Result<Self, ArithError> {
        eval_poly_at(&self.num, arg).checked_div(&eval_poly_at(&self.den, arg))
    }
}

/// Evaluates a polynomial at a rational function, `poly(n/d)`, with a
/// single reduction at the end.
pub fn eval_poly_at(poly: &PolyQ, arg: &RatFunc) -> RatFunc {
    let Some(deg) = poly.degree() else {
        return RatFunc::zero();
    };
    let mut num = PolyQ::zero();
    let mut npow = PolyQ::one();
    let dpows: Vec<PolyQ> = (0..=deg).map(|k| arg.den.pow(k as u32)).collect();
    for (k, c) in poly.coeffs().iter().enumerate() {
        if !c.is_zero() {
            num = &num + &(&npow * &dpows[deg - k]).scale(c);
        }
        if k < deg {
            npow = &npow * &arg.num;
        }
    }
    RatFunc::canonical(num, dpows[deg].clone())
}

impl From<PolyQ> for RatFunc {
    fn from(p: PolyQ) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

forward_owned!(RatFunc, Add add, Sub sub, Mul mul);
