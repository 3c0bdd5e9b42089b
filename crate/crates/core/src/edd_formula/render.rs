use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::exact_arith::{PolyQ, RadicalExpr, RatFunc, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Text,
    Latex,
    Json,
}

/// Integer polynomial, ascending coefficients.
type IntPoly = Vec<BigInt>;

fn to_int_poly(p: &PolyQ) -> IntPoly {
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

fn from_int_poly(p: &IntPoly) -> PolyQ {
    PolyQ::new(p.iter().cloned().map(Rational::from_integer).collect())
}

fn content(p: &IntPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `num/den` as `coeff · N/D` with `N`, `D` primitive integer polynomials,
/// `D` with positive leading coefficient.
fn integer_parts(r: &RatFunc) -> (Rational, IntPoly, IntPoly) {
    if r.is_zero() {
        return (Rational::zero(), Vec::new(), vec![BigInt::one()]);
    }
    let lcm = r
        .num()
        .coeffs()
        .iter()
        .chain(r.den().coeffs())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scale = Rational::from_integer(lcm);
    let n = to_int_poly(&r.num().scale(&scale));
    let d = to_int_poly(&r.den().scale(&scale));
    let (cn, cd) = (content(&n), content(&d));
    let n = n.into_iter().map(|c| c / &cn).collect();
    let d = d.into_iter().map(|c| c / &cd).collect();
    (Rational::new(cn, cd), n, d)
}

/// Removes every factor of `f` from `p`, returning the multiplicity.
fn strip(p: &mut PolyQ, f: &PolyQ) -> i32 {
    let mut k = 0;
    while p.degree().unwrap_or(0) > 0 {
        let (q, r) = p.div_rem(f);
        if !r.is_zero() {
            break;
        }
        *p = q;
        k += 1;
    }
    k
}

/// `N = c · (a p + b)^d` with `a, b` coprime integers, if it has that shape
/// for some `d ≥ 2`.
fn as_linear_power(n: &PolyQ) -> Option<(Rational, IntPoly, u32)> {
    let d = n.degree()?;
    if d < 2 {
        return None;
    }
    let lead = n.leading()?.clone();
    let root = -(n.coeff(d - 1)) / (&lead * Rational::from_integer(BigInt::from(d)));
    let lin = PolyQ::new(vec![-root, Rational::one()]);
    if lin.pow(d as u32).scale(&lead) != *n {
        return None;
    }
    let (c, lin_int, _) = integer_parts(&RatFunc::from_poly(lin));
    let c = lead * num_traits::pow(c, d);
    Some((c, lin_int, d as u32))
}

/// A polynomial factor raised to a half-integer power `half/2`.
struct Factor {
    poly: IntPoly,
    half: i32,
}

struct Term {
    coeff: Rational,
    numer: Vec<Factor>,
    denom: Vec<Factor>,
}

fn decompose(r: &RatFunc, s_half: i32, t_half: i32) -> Term {
    let (mut coeff, n, d) = integer_parts(r);
    let (mut n, mut d) = (from_int_poly(&n), from_int_poly(&d));
    let pm1 = PolyQ::from_ints(&[-1, 1]);
    let tp2 = PolyQ::from_ints(&[-2, 3]);
    let e1 = 2 * (strip(&mut n, &pm1) - strip(&mut d, &pm1)) + s_half;
    let e3 = 2 * (strip(&mut n, &tp2) - strip(&mut d, &tp2)) + t_half;

    let mut numer = Vec::new();
    let mut denom = Vec::new();
    if n.degree().unwrap_or(0) == 0 {
        coeff *= n.coeff(0);
    } else if let Some((c, lin, k)) = as_linear_power(&n) {
        coeff *= c;
        numer.push(Factor {
            poly: lin,
            half: 2 * k as i32,
        });
    } else {
        let lead_sign = n.leading().map_or(false, |c| c.is_negative());
        if lead_sign {
            coeff = -coeff;
            n = -&n;
        }
        numer.push(Factor {
            poly: to_int_poly(&n),
            half: 2,
        });
    }
    if d.degree().unwrap_or(0) == 0 {
        coeff /= d.coeff(0);
    } else {
        denom.push(Factor {
            poly: to_int_poly(&d),
            half: 2,
        });
    }
    for (poly, e) in [(pm1, e1), (tp2, e3)] {
        let f = Factor {
            poly: to_int_poly(&poly),
            half: e.abs(),
        };
        match e.signum() {
            1 => numer.push(f),
            -1 => denom.push(f),
            _ => {}
        }
    }
    Term {
        coeff,
        numer,
        denom,
    }
}

fn terms(e: &RadicalExpr) -> Vec<Term> {
    [
        (e.c1(), 0, 0),
        (e.cs(), 1, 0),
        (e.ct(), 0, 1),
        (e.cst(), 1, 1),
    ]
    .into_iter()
    .filter(|(c, _, _)| !c.is_zero())
    .map(|(c, s, t)| decompose(c, s, t))
    .collect()
}

fn poly_string(p: &IntPoly, latex: bool) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match (k, latex) {
            (0, _) => String::new(),
            (1, _) => "p".to_string(),
            (_, true) => format!("p^{{{k}}}"),
            (_, false) => format!("p^{k}"),
        };
        if var.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&var);
        } else if latex {
            out.push_str(&format!("{mag} {var}"));
        } else {
            out.push_str(&format!("{mag}*{var}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn factor_string(f: &Factor, latex: bool) -> String {
    let body = poly_string(&f.poly, latex);
    let h = f.half;
    match (latex, h) {
        (false, 1) => format!("sqrt({body})"),
        (false, 2) => format!("({body})"),
        (false, _) if h % 2 == 0 => format!("({body})^{}", h / 2),
        (false, _) => format!("({body})^({h}/2)"),
        (true, 1) => format!("\\sqrt{{{body}}}"),
        (true, 2) => format!("\\left({body}\\right)"),
        (true, _) if h % 2 == 0 => format!("\\left({body}\\right)^{{{}}}", h / 2),
        (true, _) => format!("\\left({body}\\right)^{{{h}/2}}"),
    }
}

/// Renders a term with its sign stripped; returns `(negative, body)`.
fn term_string(t: &Term, latex: bool) -> (bool, String) {
    let negative = t.coeff.is_negative();
    let num_c = t.coeff.numer().abs();
    let den_c = t.coeff.denom().clone();
    let sep = if latex { " " } else { "*" };

    let mut top: Vec<String> = Vec::new();
    if !num_c.is_one() || t.numer.is_empty() {
        top.push(num_c.to_string());
    }
    let lone_poly = latex && top.is_empty() && t.numer.len() == 1 && t.numer[0].half == 2;
    for f in &t.numer {
        if lone_poly {
            top.push(poly_string(&f.poly, true));
        } else {
            top.push(factor_string(f, latex));
        }
    }
    let mut bottom: Vec<String> = Vec::new();
    if !den_c.is_one() {
        bottom.push(den_c.to_string());
    }
    bottom.extend(t.denom.iter().map(|f| factor_string(f, latex)));

    let top = top.join(sep);
    let body = if bottom.is_empty() {
        top
    } else if latex {
        format!("\\frac{{{top}}}{{{}}}", bottom.join(sep))
    } else if bottom.len() == 1 {
        format!("{top}/{}", bottom[0])
    } else {
        format!("{top}/({})", bottom.join(sep))
    };
    (negative, body)
}

fn join_terms(e: &RadicalExpr, latex: bool) -> String {
    let mut out = String::new();
    for t in terms(e) {
        let (neg, body) = term_string(&t, latex);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Plain-text rendering such as `1 + 4*(p - 1)^(3/2)/sqrt(3*p - 2)`.
pub fn render_text(e: &RadicalExpr) -> String {
    join_terms(e, false)
}

pub fn render_latex(e: &RadicalExpr) -> String {
    join_terms(e, true)
}

fn int_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// `{num_coeffs, den_coeffs}` as coprime integer arrays (ascending in `p`,
/// positive leading denominator coefficient).
fn ratfunc_json(r: &RatFunc) -> Value {
    let (c, n, d) = integer_parts(r);
    let num: Vec<Value> = n.iter().map(|x| int_json(&(x * c.numer()))).collect();
    let den: Vec<Value> = d.iter().map(|x| int_json(&(x * c.denom()))).collect();
    json!({ "num_coeffs": num, "den_coeffs": den })
}

pub fn render_json(n: u32, e: &RadicalExpr) -> Value {
    json!({
        "n": n,
        "basis": {
            "one": ratfunc_json(e.c1()),
            "s": ratfunc_json(e.cs()),
            "t": ratfunc_json(e.ct()),
            "st": ratfunc_json(e.cst()),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edd_formula::reference_table::builtin_fixture;

    fn row(n: u32) -> RadicalExpr {
        builtin_fixture()[(n - 2) as usize].to_radical().unwrap()
    }

    #[test]
    fn text_rows() {
        assert_eq!(render_text(&row(2)), "sqrt(3*p - 2)");
        assert_eq!(render_text(&row(3)), "1 + 4*(p - 1)^(3/2)/sqrt(3*p - 2)");
        assert_eq!(
            render_text(&row(4)),
            "(29*p^3 - 63*p^2 + 48*p - 12)/(2*(3*p - 2)^(3/2))"
        );
        assert_eq!(
            render_text(&row(5)),
            "1 + 2*(5*p - 2)^2*(p - 1)^(5/2)/(3*p - 2)^(5/2)"
        );
    }

    #[test]
    fn latex_rows() {
        assert_eq!(render_latex(&row(2)), "\\sqrt{3 p - 2}");
        assert_eq!(
            render_latex(&row(4)),
            "\\frac{29 p^{3} - 63 p^{2} + 48 p - 12}{2 \\left(3 p - 2\\right)^{3/2}}"
        );
    }

    #[test]
    fn negative_and_zero() {
        assert_eq!(render_text(&RadicalExpr::zero()), "0");
        let e = RadicalExpr::s().scale_rational(&crate::exact_arith::rat(-3, 2));
        assert_eq!(render_text(&e), "-3*sqrt(p - 1)/2");
    }

    #[test]
    fn json_integer_arrays() {
        let v = render_json(4, &row(4));
        assert_eq!(v["basis"]["t"]["num_coeffs"], json!([-12, 48, -63, 29]));
        assert_eq!(v["basis"]["t"]["den_coeffs"], json!([8, -24, 18]));
        assert_eq!(v["basis"]["one"]["num_coeffs"], json!([]));
    }
}
