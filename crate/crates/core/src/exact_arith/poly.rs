use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rational_to_f64, Rational};

/// Dense univariate polynomial over Q, coefficients in ascending degree.
///
/// The zero polynomial has an empty coefficient list; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `a·x + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_canonical(&self) -> bool {
        self.coeffs.last().is_none_or(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            // Keep remainders monic to limit coefficient growth.
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// `self(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Squarefree part `self / gcd(self, self')`, made monic.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(PolyQ, Add add, Sub sub, Mul mul);

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};

    #[test]
    fn trims_trailing_zeros() {
        let p = PolyQ::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(PolyQ::new(vec![int(0)]).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = PolyQ::from_ints(&[2, -3, 1]);
        let b = PolyQ::from_ints(&[-3, 2, 1]);
        assert_eq!(PolyQ::gcd(&a, &b), PolyQ::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&PolyQ::from_ints(&[-1, 1]));
        assert_eq!(q, PolyQ::from_ints(&[-2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn compose_and_eval() {
        let p = PolyQ::from_ints(&[1, 0, 1]); // x^2 + 1
        let inner = PolyQ::from_ints(&[1, 2]); // 2x + 1
        let c = p.compose(&inner);
        assert_eq!(c, PolyQ::from_ints(&[2, 4, 4]));
        assert_eq!(c.eval(&rat(1, 2)), int(5));
    }

    #[test]
    fn squarefree_strips_repeated_factors() {
        // (x-1)^2 (x+2)
        let p = PolyQ::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree(), PolyQ::from_ints(&[-2, 1, 1]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(PolyQ::from_ints(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(
            PolyQ::new(vec![rat(1, 2), int(-3)]).to_string(),
            "-3*x + 1/2"
        );
    }
}
