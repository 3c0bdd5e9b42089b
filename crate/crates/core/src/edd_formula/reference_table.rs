use serde::{Deserialize, Serialize};

use crate::exact_arith::{int, PolyQ, RadicalExpr, RatFunc};

use super::EddError;

const BUILTIN: &str = include_str!("../../data/reference_table.json");

/// One published closed form:
/// `[1 +] numerator(p) · √(p−1)^a · √(3p−2)^b / denominator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub n: u32,
    pub plus_one: bool,
    /// Ascending integer coefficients in `p`.
    pub numerator: Vec<i64>,
    pub sqrt_p_minus_1_power: i32,
    pub sqrt_3p_minus_2_power: i32,
    pub denominator: i64,
}

#[derive(Debug, Clone, Deserialize)]
struct Fixture {
    rows: Vec<ReferenceRow>,
}

/// `√base^k` normalized into the radical basis, with `radical` the basis
/// element for `√base`.
fn half_power(base: PolyQ, radical: RadicalExpr, k: i32) -> RadicalExpr {
    let base = RatFunc::from_poly(base);
    let whole = base
        .pow(k.div_euclid(2))
        .expect("base is not identically zero");
    let e = if k.rem_euclid(2) == 1 {
        radical
    } else {
        RadicalExpr::one()
    };
    e.scale(&whole)
}

impl ReferenceRow {
    pub fn to_radical(&self) -> Result<RadicalExpr, EddError> {
        if self.denominator == 0 {
            return Err(EddError::Fixture(format!(
                "row n = {}: zero denominator",
                self.n
            )));
        }
        let num = PolyQ::from_ints(&self.numerator);
        let s_part = half_power(
            PolyQ::from_ints(&[-1, 1]),
            RadicalExpr::s(),
            self.sqrt_p_minus_1_power,
        );
        let t_part = half_power(
            PolyQ::from_ints(&[-2, 3]),
            RadicalExpr::t(),
            self.sqrt_3p_minus_2_power,
        );
        let core = (&s_part * &t_part)
            .scale(&RatFunc::from_poly(num))
            .scale_rational(&(int(1) / int(self.denominator)));
        Ok(if self.plus_one {
            &RadicalExpr::one() + &core
        } else {
            core
        })
    }
}

pub fn parse_fixture(text: &str) -> Result<Vec<ReferenceRow>, EddError> {
    let f: Fixture = serde_json::from_str(text).map_err(|e| EddError::Fixture(e.to_string()))?;
    Ok(f.rows)
}

/// The published table for `2 ≤ n ≤ 9`, embedded at build time.
pub fn builtin_fixture() -> Vec<ReferenceRow> {
    parse_fixture(BUILTIN).expect("embedded fixture is valid")
}

pub fn builtin_fixture_text() -> &'static str {
    BUILTIN
}

/// Equality in Q(p)[s, t], checked coordinate-wise by cross-multiplication
/// `num_a · den_b = num_b · den_a`.
pub fn radical_equal(a: &RadicalExpr, b: &RadicalExpr) -> bool {
    if a.pi() != b.pi() && !(a.is_zero() && b.is_zero()) {
        return false;
    }
    let pairs = [
        (a.c1(), b.c1()),
        (a.cs(), b.cs()),
        (a.ct(), b.ct()),
        (a.cst(), b.cst()),
    ];
    pairs
        .iter()
        .all(|(x, y)| x.num() * y.den() == y.num() * x.den())
}
