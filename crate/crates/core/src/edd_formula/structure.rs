use crate::exact_arith::{int, rat, PolyQ, RatFunc};

use super::{expected_redd_symbolic, EddError};

/// Shape of `E(n, p)` in its radical field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralReport {
    /// `n = 2m+1`: `E = 1 + √((p−1)(3p−2)) · (p−1)^(m−1) · f(4(p−1)/(3p−2))`.
    Odd { n: u32, m: u32, f: PolyQ },
    /// `n = 2m`: `E = ct · √(3p−2)` with the denominator of `ct` equal to
    /// `(p − 2/3)^k`.
    Even {
        n: u32,
        m: u32,
        ct: RatFunc,
        den_exponent: u32,
        degree_gap: i64,
    },
}

fn fail(n: u32, msg: impl Into<String>) -> EddError {
    EddError::Structure {
        n,
        message: msg.into(),
    }
}

/// Extracts and validates the structural decomposition of `E(n, p)`.
pub fn structural_decomposition(n: u32) -> Result<StructuralReport, EddError> {
    let e = expected_redd_symbolic(n)?.expr;
    if e.pi() != 0 {
        return Err(fail(n, format!("π half-exponent {} survives", e.pi())));
    }
    if n % 2 == 1 {
        let m = (n - 1) / 2;
        if *e.c1() != RatFunc::one() || !e.cs().is_zero() || !e.ct().is_zero() {
            return Err(fail(n, "expected 1 + (rational function)·√((p−1)(3p−2))"));
        }
        let p_minus_1 = RatFunc::from_poly(PolyQ::from_ints(&[-1, 1]));
        let g = e
            .cst()
            .checked_div(&p_minus_1.pow(m as i32 - 1).map_err(EddError::Arith)?)
            .map_err(EddError::Arith)?;
        // p = (2Y − 4)/(3Y − 4) inverts Y = 4(p−1)/(3p−2).
        let p_of_y = RatFunc::new(PolyQ::from_ints(&[-4, 2]), PolyQ::from_ints(&[-4, 3]))
            .map_err(EddError::Arith)?;
        let f_y = g.compose(&p_of_y).map_err(EddError::Arith)?;
        let Some(f) = f_y.as_poly().cloned() else {
            return Err(fail(n, format!("f(Y) = {f_y} is not a polynomial")));
        };
        if f.degree() != Some(2 * m as usize - 1) {
            return Err(fail(
                n,
                format!("deg f = {:?}, expected {}", f.degree(), 2 * m - 1),
            ));
        }
        Ok(StructuralReport::Odd { n, m, f })
    } else {
        let m = n / 2;
        if !e.c1().is_zero() || !e.cs().is_zero() || !e.cst().is_zero() {
            return Err(fail(n, "expected a Q(p)-multiple of √(3p−2)"));
        }
        let ct = e.ct().clone();
        let den = ct.den();
        let k = den.degree().unwrap_or(0) as u32;
        let root_factor = PolyQ::new(vec![rat(-2, 3), int(1)]);
        if *den != root_factor.pow(k) {
            return Err(fail(
                n,
                format!("denominator {den} is not a power of (p − 2/3)"),
            ));
        }
        if k > m.max(2 * m - 2) {
            return Err(fail(
                n,
                format!("denominator exponent {k} exceeds {}", m.max(2 * m - 2)),
            ));
        }
        let gap = ct.num().degree().map_or(0, |d| d as i64) - k as i64;
        if gap > m as i64 - 1 {
            return Err(fail(n, format!("growth degree {gap} exceeds {}", m - 1)));
        }
        Ok(StructuralReport::Even {
            n,
            m,
            ct,
            den_exponent: k,
            degree_gap: gap,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_f_is_identity() {
        match structural_decomposition(3).unwrap() {
            StructuralReport::Odd { f, .. } => assert_eq!(f, PolyQ::from_ints(&[0, 1])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn n5_cubic() {
        // f(Y) = (Y/2)(Y − 3)²
        match structural_decomposition(5).unwrap() {
            StructuralReport::Odd { f, .. } => {
                let expected = PolyQ::new(vec![rat(9, 2), int(-3), rat(1, 2)]);
                assert_eq!(f, &expected * &PolyQ::x());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn n2_is_t() {
        match structural_decomposition(2).unwrap() {
            StructuralReport::Even {
                ct, den_exponent, ..
            } => {
                assert_eq!(ct, RatFunc::one());
                assert_eq!(den_exponent, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
