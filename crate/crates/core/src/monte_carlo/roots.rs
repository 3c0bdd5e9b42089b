use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{float::FloatCore, One, Signed, Zero};

use crate::exact_arith::{PolyQ, Rational};

use super::tensor::BinaryForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootCount {
    pub count: usize,
    /// Set when `f` has a repeated projective root, so the distinct count is
    /// below the count with multiplicity.
    pub anomaly: bool,
}

/// Integer polynomial, ascending coefficients, no trailing zeros.
type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn primitive(p: IntPoly) -> IntPoly {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

fn derivative(p: &IntPoly) -> IntPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect(),
    )
}

/// A positive multiple of `a mod b`: each reduction step scales by `|lc(b)|`
/// so signs, and hence Sturm sign counts, are preserved.
fn signed_prem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.len() - 1;
    let lb = b.last().expect("nonzero divisor");
    let (lb_abs, lb_sign) = (lb.abs(), BigInt::from(lb.signum()));
    let mut r = a.clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r.last().expect("nonempty").clone() * &lb_sign;
        for c in r.iter_mut() {
            *c *= &lb_abs;
        }
        for (k, c) in b.iter().enumerate() {
            r[k + shift] -= &lr * c;
        }
        r = trim(r);
    }
    r
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(c: &BigInt) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// `V(−∞) − V(+∞)` over the Sturm sequence of `g`, plus whether `g` has a
/// repeated root (the last sequence element is `gcd(g, g')` up to scale).
/// The count is of distinct real roots whether or not `g` is squarefree.
fn sturm_int(g: IntPoly) -> (usize, bool) {
    let g = primitive(trim(g));
    if g.len() <= 1 {
        return (0, false);
    }
    let mut seq = vec![g.clone(), primitive(derivative(&g))];
    loop {
        let n = seq.len();
        let r = signed_prem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(primitive(r.into_iter().map(|c| -c).collect()));
    }
    let repeated = seq.last().expect("nonempty").len() > 1;
    let at_pos = seq.iter().map(|s| sign(s.last().expect("nonzero")));
    let at_neg = seq.iter().map(|s| {
        let lead = sign(s.last().expect("nonzero"));
        if s.len() % 2 == 1 {
            lead
        } else {
            -lead
        }
    });
    (sign_changes(at_neg) - sign_changes(at_pos), repeated)
}

fn clear_denominators(g: &PolyQ) -> IntPoly {
    let l = g
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    g.coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

/// Exact dyadic values of the doubles, all scaled by one power of two.
fn dyadic_ints(coeffs: &[f64]) -> IntPoly {
    let parts: Vec<(BigInt, i16)> = coeffs
        .iter()
        .map(|&c| {
            let (mant, exp, sgn) = c.integer_decode();
            (BigInt::from(mant) * i64::from(sgn), exp)
        })
        .collect();
    let min_exp = parts
        .iter()
        .filter(|(m, _)| !m.is_zero())
        .map(|&(_, e)| e)
        .min()
        .unwrap_or(0);
    parts
        .into_iter()
        .map(|(m, e)| m << (e - min_exp) as usize)
        .collect()
}

/// Number of distinct real roots of a nonzero rational polynomial.
pub fn sturm_real_roots(g: &PolyQ) -> usize {
    sturm_int(clear_denominators(g)).0
}

/// Distinct real projective zeros of a binary form. Coefficients are taken
/// as their exact dyadic values; the affine chart `x₂ = 1` is counted by an
/// exact Sturm sequence and `[1:0]` is added when `x₂ | f`.
pub fn count_real_projective_roots(f: &BinaryForm) -> RootCount {
    assert!(!f.is_zero(), "form must not vanish identically");
    let d = f.degree();
    let top = f.coeffs[d] == 0.0;
    let double_at_infinity = top && d >= 1 && f.coeffs[d - 1] == 0.0;
    let (affine, repeated) = sturm_int(dyadic_ints(&f.coeffs));
    RootCount {
        count: affine + usize::from(top),
        anomaly: repeated || double_at_infinity,
    }
}

/// Real root count of a nonzero polynomial over the rationals, for oracles.
pub fn count_distinct_real_roots(g: &PolyQ) -> usize {
    assert!(!g.is_zero());
    sturm_real_roots(&g.squarefree())
}
