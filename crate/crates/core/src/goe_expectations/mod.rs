//! Expected determinant `J_n(u)` and expected absolute determinant `I_n(u)`
//! of the shifted GOE matrix `B − uI`, where `B` has diagonal variance 1 and
//! off-diagonal variance 1/2.

mod abs_det;
mod gamma_minor;

pub use abs_det::{
    abs_det_correction, abs_det_eval, det_expectation, folded_normal_mean, j_even_closed,
    AbsDetExpr, Channel, DetExpectation,
};
pub use gamma_minor::{gamma_minor_det, GammaMinor, GammaVariant};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoeError {
    #[error("Gamma minor indices ({i}, {j}) out of range for m = {m}")]
    IndexOutOfRange { m: u32, i: u32, j: u32 },
}
