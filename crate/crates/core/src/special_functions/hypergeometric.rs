use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact_arith::{int, PolyQ, Rational};

use super::SpecialError;

/// `−a` if `a` is a non-positive integer.
fn terminating_degree(a: &Rational) -> Option<u32> {
    (a.is_integer() && !a.is_positive())
        .then(|| (-a).to_integer().to_u32().expect("degree fits u32"))
}

fn check_denominator(c: &Rational, terms: u32) -> Result<(), SpecialError> {
    for i in 0..terms {
        if (c + int(i as i64)).is_zero() {
            return Err(SpecialError::InvalidDenominator(c.clone()));
        }
    }
    Ok(())
}

/// Kummer's `M(a, c, x) = Σ (a)_k/(c)_k xᵏ/k!` for a non-positive integer
/// `a`, where the series is a polynomial of degree `−a`.
pub fn kummer_m_poly(a: i64, c: &Rational) -> Result<PolyQ, SpecialError> {
    if a > 0 {
        return Err(SpecialError::NonTerminating);
    }
    if c.is_integer() && !c.is_positive() {
        return Err(SpecialError::InvalidDenominator(c.clone()));
    }
    let a = int(a);
    let degree = (-&a).to_integer().to_u32().expect("degree fits u32");
    series(&[a], c, degree)
}

/// Gauss' `F(a, b, c, x) = Σ (a)_k (b)_k/(c)_k xᵏ/k!` truncated where it
/// terminates: at least one of `a`, `b` must be a non-positive integer, and
/// the degree is the smaller of the terminating `−a`, `−b`.
pub fn gauss_f_poly(a: &Rational, b: &Rational, c: &Rational) -> Result<PolyQ, SpecialError> {
    let degree = [a, b]
        .into_iter()
        .filter_map(terminating_degree)
        .min()
        .ok_or(SpecialError::NonTerminating)?;
    check_denominator(c, degree)?;
    series(&[a.clone(), b.clone()], c, degree)
}

fn series(numer: &[Rational], c: &Rational, degree: u32) -> Result<PolyQ, SpecialError> {
    check_denominator(c, degree)?;
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for k in 0..degree {
        let kk = int(k as i64);
        for a in numer {
            term *= a + &kk;
        }
        term /= (c + &kk) * (&kk + int(1));
        coeffs.push(term.clone());
    }
    Ok(PolyQ::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::special_functions::{hermite, HermiteKind};

    #[test]
    fn kummer_small_cases() {
        assert_eq!(kummer_m_poly(0, &rat(5, 2)).unwrap(), PolyQ::one());
        assert_eq!(
            kummer_m_poly(-1, &rat(3, 2)).unwrap(),
            PolyQ::new(vec![int(1), rat(-2, 3)])
        );
        assert_eq!(
            kummer_m_poly(-2, &int(0)),
            Err(SpecialError::InvalidDenominator(int(0)))
        );
    }

    #[test]
    fn gauss_small_cases() {
        let f = gauss_f_poly(&int(-1), &int(-1), &rat(1, 2)).unwrap();
        assert_eq!(f, PolyQ::from_ints(&[1, 2]));
        let g = gauss_f_poly(&int(-3), &rat(1, 2), &rat(3, 2)).unwrap();
        assert_eq!(g.degree(), Some(3));
        assert_eq!(g.coeff(0), int(1));
        assert_eq!(
            gauss_f_poly(&int(1), &rat(1, 2), &int(1)),
            Err(SpecialError::NonTerminating)
        );
        // (c)_k hits zero at k = 2 while the series runs to degree 3.
        assert_eq!(
            gauss_f_poly(&int(-3), &int(-4), &int(-1)),
            Err(SpecialError::InvalidDenominator(int(-1)))
        );
    }

    #[test]
    fn degree_is_min_of_terminating_parameters() {
        let f = gauss_f_poly(&int(-4), &int(-2), &rat(1, 2)).unwrap();
        assert_eq!(f.degree(), Some(2));
    }

    #[test]
    fn odd_hermite_as_kummer() {
        // H_{2k+1}(x) = (−1)^k (2k+1)! 2x / k! · M(−k, 3/2, x²)
        let x2 = PolyQ::monomial(int(1), 2);
        for k in 0..=6u32 {
            let m = kummer_m_poly(-(k as i64), &rat(3, 2)).unwrap().compose(&x2);
            let scale = Rational::from_integer(
                crate::exact_arith::factorial(2 * k + 1) * 2 / crate::exact_arith::factorial(k),
            );
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let rhs = &PolyQ::monomial(scale * sign, 1) * &m;
            assert_eq!(hermite(HermiteKind::Physicist, 2 * k + 1), rhs, "k = {k}");
        }
    }
}
