//! Exact formulas for the expected number of real critical rank-one
//! approximations to a Bombieri-Gaussian symmetric tensor, `E(n, p)`, and
//! the expected absolute determinant of GOE matrices they are built from,
//! together with the sampling and quadrature oracles that validate them.

pub mod edd_formula;
pub mod exact_arith;
pub mod goe_expectations;
pub mod monte_carlo;
pub mod special_functions;
