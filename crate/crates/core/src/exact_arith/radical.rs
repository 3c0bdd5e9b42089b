use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{int, rational_to_f64, ArithError, PiScalar, PolyQ, RatFunc, Rational};

/// `s² = p − 1`.
pub(crate) fn s_squared() -> RatFunc {
    RatFunc::from_poly(PolyQ::from_ints(&[-1, 1]))
}

/// `t² = 3p − 2`.
pub(crate) fn t_squared() -> RatFunc {
    RatFunc::from_poly(PolyQ::from_ints(&[-2, 3]))
}

/// Element `π^(pi/2) · (c1 + cs·s + ct·t + cst·st)` of the module over Q(p)
/// with basis `{1, s, t, st}`, where `s = √(p−1)` and `t = √(3p−2)`.
///
/// Products are reduced with `s² = p − 1` and `t² = 3p − 2`, so the basis
/// coordinates are unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalExpr {
    c1: RatFunc,
    cs: RatFunc,
    ct: RatFunc,
    cst: RatFunc,
    pi: i32,
}

impl RadicalExpr {
    pub fn new(c1: RatFunc, cs: RatFunc, ct: RatFunc, cst: RatFunc) -> Self {
        Self::with_pi(c1, cs, ct, cst, 0)
    }

    pub fn with_pi(c1: RatFunc, cs: RatFunc, ct: RatFunc, cst: RatFunc, pi: i32) -> Self {
        let mut e = Self {
            c1,
            cs,
            ct,
            cst,
            pi,
        };
        if e.is_zero() {
            e.pi = 0;
        }
        e
    }

    pub fn zero() -> Self {
        Self::from_ratfunc(RatFunc::zero())
    }

    pub fn one() -> Self {
        Self::from_ratfunc(RatFunc::one())
    }

    pub fn from_ratfunc(c: RatFunc) -> Self {
        Self::new(c, RatFunc::zero(), RatFunc::zero(), RatFunc::zero())
    }

    /// `√(p−1)`.
    pub fn s() -> Self {
        Self::new(
            RatFunc::zero(),
            RatFunc::one(),
            RatFunc::zero(),
            RatFunc::zero(),
        )
    }

    /// `√(3p−2)`.
    pub fn t() -> Self {
        Self::new(
            RatFunc::zero(),
            RatFunc::zero(),
            RatFunc::one(),
            RatFunc::zero(),
        )
    }

    /// `√((p−1)(3p−2))`.
    pub fn st() -> Self {
        Self::new(
            RatFunc::zero(),
            RatFunc::zero(),
            RatFunc::zero(),
            RatFunc::one(),
        )
    }

    /// `√(p−1)^k`, normalized as `(p−1)^⌊k/2⌋ · s^(k mod 2)`.
    pub fn sqrt_p_minus_1_pow(k: u32) -> Self {
        let whole = s_squared().pow((k / 2) as i32).expect("positive power");
        let base = if k % 2 == 1 { Self::s() } else { Self::one() };
        base.scale(&whole)
    }

    pub fn c1(&self) -> &RatFunc {
        &self.c1
    }

    pub fn cs(&self) -> &RatFunc {
        &self.cs
    }

    pub fn ct(&self) -> &RatFunc {
        &self.ct
    }

    pub fn cst(&self) -> &RatFunc {
        &self.cst
    }

    pub fn pi(&self) -> i32 {
        self.pi
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.cs.is_zero() && self.ct.is_zero() && self.cst.is_zero()
    }

    pub fn is_canonical(&self) -> bool {
        [&self.c1, &self.cs, &self.ct, &self.cst]
            .iter()
            .all(|c| c.is_canonical())
            && (!self.is_zero() || self.pi == 0)
    }

    /// Multiplies every coordinate by a rational function.
    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::with_pi(
            &self.c1 * c,
            &self.cs * c,
            &self.ct * c,
            &self.cst * c,
            self.pi,
        )
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        Self::with_pi(
            self.c1.scale(c),
            self.cs.scale(c),
            self.ct.scale(c),
            self.cst.scale(c),
            self.pi,
        )
    }

    /// Adds `delta` to the π half-exponent.
    pub fn shift_pi(&self, delta: i32) -> Self {
        let mut e = self.clone();
        if !e.is_zero() {
            e.pi += delta;
        }
        e
    }

    /// Sum of two expressions with the same π exponent (zero is neutral).
    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.pi != rhs.pi {
            return Err(ArithError::MixedScalars);
        }
        Ok(Self::with_pi(
            &self.c1 + &rhs.c1,
            &self.cs + &rhs.cs,
            &self.ct + &rhs.ct,
            &self.cst + &rhs.cst,
            self.pi,
        ))
    }

    /// Numeric value at `p = p0` using the positive square roots.
    pub fn eval(&self, p0: &Rational) -> Result<f64, ArithError> {
        if p0 < &int(2) {
            return Err(ArithError::Domain(p0.clone()));
        }
        let s = rational_to_f64(&(p0 - int(1))).sqrt();
        let t = rational_to_f64(&(p0 * int(3) - int(2))).sqrt();
        let c1 = self.c1.eval_f64(p0)?;
        let cs = self.cs.eval_f64(p0)?;
        let ct = self.ct.eval_f64(p0)?;
        let cst = self.cst.eval_f64(p0)?;
        let v = c1 + cs * s + ct * t + cst * s * t;
        Ok(v * std::f64::consts::PI.sqrt().powi(self.pi))
    }

    /// Exact basis coordinates at `p0`.
    pub fn eval_coords(&self, p0: &Rational) -> Result<[Rational; 4], ArithError> {
        Ok([
            self.c1.eval(p0)?,
            self.cs.eval(p0)?,
            self.ct.eval(p0)?,
            self.cst.eval(p0)?,
        ])
    }

    /// Exact value at an integer `p0` where `s` and `t` are themselves
    /// rational (perfect squares), if that is the case.
    pub fn eval_exact_if_rational(&self, p0: &Rational) -> Result<Option<Rational>, ArithError> {
        let s = exact_sqrt(&(p0 - int(1)));
        let t = exact_sqrt(&(p0 * int(3) - int(2)));
        if self.pi != 0 {
            return Ok(None);
        }
        let [c1, cs, ct, cst] = self.eval_coords(p0)?;
        let mut v = c1;
        for (c, r) in [(cs, s.clone()), (ct, t.clone())] {
            if c.is_zero() {
                continue;
            }
            match r {
                Some(r) => v += c * r,
                None => return Ok(None),
            }
        }
        if !cst.is_zero() {
            match (s, t) {
                (Some(s), Some(t)) => v += cst * s * t,
                _ => return Ok(None),
            }
        }
        Ok(Some(v))
    }
}

fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

impl Mul for &RadicalExpr {
    type Output = RadicalExpr;
    fn mul(self, b: &RadicalExpr) -> RadicalExpr {
        let a = self;
        let ss = s_squared();
        let tt = t_squared();
        let sstt = &ss * &tt;
        let c1 = &(&(&a.c1 * &b.c1) + &(&(&a.cs * &b.cs) * &ss))
            + &(&(&(&a.ct * &b.ct) * &tt) + &(&(&a.cst * &b.cst) * &sstt));
        let cs = &(&(&a.c1 * &b.cs) + &(&a.cs * &b.c1))
            + &(&(&(&a.ct * &b.cst) + &(&a.cst * &b.ct)) * &tt);
        let ct = &(&(&a.c1 * &b.ct) + &(&a.ct * &b.c1))
            + &(&(&(&a.cs * &b.cst) + &(&a.cst * &b.cs)) * &ss);
        let cst = &(&(&a.c1 * &b.cst) + &(&a.cst * &b.c1)) + &(&(&a.cs * &b.ct) + &(&a.ct * &b.cs));
        RadicalExpr::with_pi(c1, cs, ct, cst, a.pi + b.pi)
    }
}

impl Mul for RadicalExpr {
    type Output = RadicalExpr;
    fn mul(self, rhs: RadicalExpr) -> RadicalExpr {
        &self * &rhs
    }
}

/// Panics if both sides are nonzero with different π exponents; use
/// [`RadicalExpr::checked_add`] or [`PiGraded`] when mixing is possible.
impl Add for &RadicalExpr {
    type Output = RadicalExpr;
    fn add(self, rhs: &RadicalExpr) -> RadicalExpr {
        self.checked_add(rhs)
            .expect("adding radical expressions with different π exponents")
    }
}

impl Sub for &RadicalExpr {
    type Output = RadicalExpr;
    fn sub(self, rhs: &RadicalExpr) -> RadicalExpr {
        self + &(-rhs)
    }
}

impl Neg for &RadicalExpr {
    type Output = RadicalExpr;
    fn neg(self) -> RadicalExpr {
        RadicalExpr::with_pi(-&self.c1, -&self.cs, -&self.ct, -&self.cst, self.pi)
    }
}

impl Add for RadicalExpr {
    type Output = RadicalExpr;
    fn add(self, rhs: RadicalExpr) -> RadicalExpr {
        &self + &rhs
    }
}

impl Sub for RadicalExpr {
    type Output = RadicalExpr;
    fn sub(self, rhs: RadicalExpr) -> RadicalExpr {
        &self - &rhs
    }
}

/// Finite sum `Σ_h π^(h/2) · e_h` of radical expressions grouped by their π
/// half-exponent. Used while assembling formulas whose π powers only cancel
/// at the end.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiGraded {
    parts: BTreeMap<i32, RadicalExpr>,
}

impl PiGraded {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_expr(e: RadicalExpr) -> Self {
        let mut g = Self::new();
        g.add_expr(e);
        g
    }

    /// Adds `e` (its own π exponent decides the grade).
    pub fn add_expr(&mut self, e: RadicalExpr) {
        if e.is_zero() {
            return;
        }
        let h = e.pi;
        let base = e.shift_pi(-h);
        let sum = match self.parts.remove(&h) {
            Some(prev) => &prev + &base,
            None => base,
        };
        if !sum.is_zero() {
            self.parts.insert(h, sum);
        }
    }

    /// Adds `scalar · e`. The scalar must not carry a `√2`.
    pub fn add_term(&mut self, scalar: &PiScalar, e: &RadicalExpr) {
        assert!(
            !scalar.has_sqrt2(),
            "√2 factors are not representable in the radical basis"
        );
        let term = e.scale_rational(scalar.q()).shift_pi(scalar.h());
        self.add_expr(term);
    }

    /// Multiplies every grade by `scalar · e`.
    pub fn mul(&self, scalar: &PiScalar, e: &RadicalExpr) -> Self {
        let mut out = Self::new();
        for (h, part) in &self.parts {
            let mut term = part.clone();
            term.pi = 0;
            let prod = &term * e;
            out.add_term(scalar, &prod.shift_pi(*h));
        }
        out
    }

    pub fn add(&mut self, other: &Self) {
        for (h, part) in &other.parts {
            let mut e = part.clone();
            e.pi = *h;
            self.add_expr(e);
        }
    }

    /// Surviving π half-exponents, ascending.
    pub fn exponents(&self) -> Vec<i32> {
        self.parts.keys().copied().collect()
    }

    /// Collapses to a single expression, requiring that only the π-free grade
    /// survives.
    pub fn collapse(&self) -> Result<RadicalExpr, ArithError> {
        let exps = self.exponents();
        match exps.as_slice() {
            [] => Ok(RadicalExpr::zero()),
            [0] => Ok(self.parts[&0].clone()),
            _ => Err(ArithError::PiResidual(exps)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn basis_products() {
        assert_eq!(&RadicalExpr::s() * &RadicalExpr::t(), RadicalExpr::st());
        assert_eq!(
            &RadicalExpr::s() * &RadicalExpr::s(),
            RadicalExpr::from_ratfunc(s_squared())
        );
        assert_eq!(
            &RadicalExpr::st() * &RadicalExpr::st(),
            RadicalExpr::from_ratfunc(&s_squared() * &t_squared())
        );
    }

    #[test]
    fn conjugate_product() {
        let one = RadicalExpr::one();
        let a = &one + &RadicalExpr::s();
        let b = &one - &RadicalExpr::s();
        // (1+s)(1-s) = 1 - (p-1) = 2 - p
        let expected = RadicalExpr::from_ratfunc(RatFunc::from_poly(PolyQ::from_ints(&[2, -1])));
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn evaluation() {
        assert_eq!(RadicalExpr::t().eval(&int(2)).unwrap(), 2.0);
        assert_eq!(RadicalExpr::st().eval(&int(2)).unwrap(), 2.0);
        // 1 + 4 s^3 / t = 1 + 4 (p-1) s t / (3p-2)
        let coeff = (&s_squared() * &t_squared().inv().unwrap()).scale(&int(4));
        let e = &RadicalExpr::one() + &RadicalExpr::st().scale(&coeff);
        let v = e.eval(&int(3)).unwrap();
        let expected = 1.0 + 4.0 * 2f64.powf(1.5) / 7f64.sqrt();
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 5.2762).abs() < 1e-4);
    }

    #[test]
    fn evaluation_below_domain_is_rejected() {
        assert!(matches!(
            RadicalExpr::t().eval(&rat(3, 2)),
            Err(ArithError::Domain(_))
        ));
    }

    #[test]
    fn graded_collapse() {
        let mut g = PiGraded::new();
        g.add_term(&PiScalar::new(int(1), 1), &RadicalExpr::one());
        assert_eq!(g.collapse(), Err(ArithError::PiResidual(vec![1])));
        g.add_term(&PiScalar::new(int(-1), 1), &RadicalExpr::one());
        g.add_term(&PiScalar::one(), &RadicalExpr::t());
        assert_eq!(g.collapse().unwrap(), RadicalExpr::t());
        let scaled = g.mul(&PiScalar::new(int(2), -1), &RadicalExpr::s());
        assert_eq!(scaled.exponents(), vec![-1]);
    }
}
