//! Exact and numeric `E(n, p)`, the expected number of real critical points
//! of the distance from a Gaussian symmetric tensor to the rank-one
//! (Veronese) variety, together with the complex count `D(n, p)`, the
//! published small-`n` table and structural checks.

mod assembly;
pub mod reference_table;
mod render;
mod structure;

pub use assembly::{even_kernel, odd_kernel, Kernel};
pub use reference_table::{builtin_fixture, parse_fixture, radical_equal, ReferenceRow};
pub use render::{render_json, render_latex, render_text, Format};
pub use structure::{structural_decomposition, StructuralReport};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_arith::{ArithError, RadicalExpr, Rational};

/// Largest `n` accepted by the table emitter.
pub const MAX_TABLE_N: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EddError {
    #[error("n = {0} is outside the supported range (n >= 2)")]
    InvalidN(u32),
    #[error("table range {0}..={1} must satisfy 2 <= n_min <= n_max <= 12")]
    InvalidRange(u32, u32),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("structural check failed for n = {n}: {message}")]
    Structure { n: u32, message: String },
    #[error("bad reference table fixture: {0}")]
    Fixture(String),
}

/// `D(n, p) = Σ_{i<n} (p−1)^i`.
pub fn complex_edd(n: u32, p: u64) -> BigInt {
    assert!(n >= 1 && p >= 2, "requires n >= 1 and p >= 2");
    let base = BigInt::from(p - 1);
    let mut term = BigInt::one();
    let mut total = BigInt::zero();
    for _ in 0..n {
        total += &term;
        term *= &base;
    }
    total
}

/// `E(n, p)` as an element of Q(p)[√(p−1), √(3p−2)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReddExpr {
    pub n: u32,
    pub expr: RadicalExpr,
}

impl ReddExpr {
    pub fn eval(&self, p: &Rational) -> Result<f64, EddError> {
        Ok(self.expr.eval(p)?)
    }
}

fn cache() -> &'static Mutex<HashMap<u32, RadicalExpr>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, RadicalExpr>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Exact `E(n, p)` for `n ≥ 2`. Results are memoized per `n`.
pub fn expected_redd_symbolic(n: u32) -> Result<ReddExpr, EddError> {
    if n < 2 {
        return Err(EddError::InvalidN(n));
    }
    if let Some(e) = cache().lock().expect("cache lock").get(&n) {
        return Ok(ReddExpr { n, expr: e.clone() });
    }
    let expr = assembly::assemble(n)?;
    cache().lock().expect("cache lock").insert(n, expr.clone());
    Ok(ReddExpr { n, expr })
}

/// Numeric `E(n, p)` for rational `p ≥ 2`.
pub fn expected_redd_eval(n: u32, p: &Rational) -> Result<f64, EddError> {
    expected_redd_symbolic(n)?.eval(p)
}

/// Renders `E(n, p)` for `n_min ≤ n ≤ n_max`.
pub fn emit_table(n_min: u32, n_max: u32, format: Format) -> Result<String, EddError> {
    if n_min < 2 || n_min > n_max || n_max > MAX_TABLE_N {
        return Err(EddError::InvalidRange(n_min, n_max));
    }
    let exprs = (n_min..=n_max)
        .map(|n| expected_redd_symbolic(n).map(|e| (n, e.expr)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        Format::Text => exprs
            .iter()
            .map(|(n, e)| format!("E({n},p) = {}\n", render_text(e)))
            .collect(),
        Format::Latex => {
            let mut out =
                String::from("\\begin{tabular}{| l | l |}\n\\hline\n$n$ & $E(n,p)$ \\\\ \\hline\n");
            for (n, e) in &exprs {
                out.push_str(&format!("{n} & ${}$ \\\\\n", render_latex(e)));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
        Format::Json => {
            let rows: Vec<_> = exprs.iter().map(|(n, e)| render_json(*n, e)).collect();
            let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
            s.push('\n');
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::int;

    #[test]
    fn complex_count() {
        assert_eq!(complex_edd(4, 3), BigInt::from(15));
        for n in 1..8 {
            assert_eq!(complex_edd(n, 2), BigInt::from(n));
        }
        for p in 2..12 {
            assert_eq!(complex_edd(2, p), BigInt::from(p));
        }
    }

    #[test]
    fn small_cases_match_table() {
        let rows = builtin_fixture();
        for row in rows.iter().take(4) {
            let e = expected_redd_symbolic(row.n).unwrap();
            assert!(
                radical_equal(&e.expr, &row.to_radical().unwrap()),
                "n = {}",
                row.n
            );
        }
    }

    #[test]
    fn e42_and_e43() {
        assert!((expected_redd_eval(4, &int(2)).unwrap() - 4.0).abs() < 1e-12);
        let v = expected_redd_eval(4, &int(3)).unwrap();
        assert!((v - 9.3953).abs() < 1e-3, "{v}");
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(expected_redd_symbolic(1), Err(EddError::InvalidN(1)));
    }

    #[test]
    fn table_ranges() {
        assert!(emit_table(1, 3, Format::Text).is_err());
        assert!(emit_table(4, 3, Format::Text).is_err());
        assert!(emit_table(2, 13, Format::Text).is_err());
        assert_eq!(
            emit_table(2, 2, Format::Text).unwrap(),
            "E(2,p) = sqrt(3*p - 2)\n"
        );
        let v: serde_json::Value =
            serde_json::from_str(&emit_table(2, 9, Format::Json).unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 8);
    }
}
