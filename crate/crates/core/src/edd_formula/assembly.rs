use num_bigint::BigInt;

use crate::exact_arith::{
    eval_poly_at, factorial, int, rat, ArithError, PiGraded, PiScalar, PolyQ, RadicalExpr, RatFunc,
    Rational,
};
use crate::goe_expectations::{gamma_minor_det, GammaMinor, GammaVariant};
use crate::special_functions::{gamma_half, gamma_product_half, gauss_f_poly};

/// `π^(pi/2) · value` with `value ∈ Q(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub pi: i32,
    pub value: RatFunc,
}

impl Kernel {
    pub fn eval(&self, p0: &Rational) -> Result<f64, ArithError> {
        Ok(self.value.eval_f64(p0)? * std::f64::consts::PI.sqrt().powi(self.pi))
    }
}

/// `X = (3p−2)/(4(p−1))`.
fn x_arg() -> RatFunc {
    RatFunc::new(PolyQ::from_ints(&[-2, 3]), PolyQ::from_ints(&[-4, 4]))
        .expect("nonzero denominator")
}

/// `(−X)^(−k)`.
fn neg_x_inv_pow(k: i32) -> RatFunc {
    (-x_arg()).pow(-k).expect("X is not identically zero")
}

fn gauss_at(a: Rational, b: Rational, c: Rational, arg: &RatFunc) -> RatFunc {
    let f = gauss_f_poly(&a, &b, &c).expect("parameters give a terminating series");
    eval_poly_at(&f, arg)
}

fn gamma_q(x: Rational) -> (Rational, i32) {
    let g = gamma_half(&x).expect("positive half-integer");
    (g.q().clone(), g.h())
}

/// Odd-`n` summand without its Gamma minor:
/// `Γ(i+j−1/2) · (1−2i+2j)/(3−2i−2j) · (−X)^(−(i+j−1)) · F(2−2i, 1−2j; 5/2−i−j; X)`.
pub fn odd_kernel(i: u32, j: u32) -> Kernel {
    let (i, j) = (i as i64, j as i64);
    let (g, pi) = gamma_q(int(i + j) - rat(1, 2));
    let ratio = rat(1 - 2 * i + 2 * j, 3 - 2 * i - 2 * j);
    let f = gauss_at(
        int(2 - 2 * i),
        int(1 - 2 * j),
        rat(5, 2) - int(i + j),
        &x_arg(),
    );
    let value = (&f * &neg_x_inv_pow((i + j - 1) as i32)).scale(&(g * ratio));
    Kernel { pi, value }
}

/// Even-`n` summand without its Gamma minor. For `i > 0`:
/// `Γ(i+j+1/2) · (1−2i+2j)/(1−2i−2j) · (−X)^(−(i+j)) · F(−2j, 1−2i; 3/2−i−j; X)`.
/// For `i = 0`, the two boundary terms
/// `√π (2j+1)!/((−1)ʲ 4ʲ j!) · (p−2)ʲ p/((p−1)ʲ(3p−2)) · F(−j, 1/2; 3/2; −p²/((3p−2)(p−2)))`
/// and `−Γ(j+1/2)/(2 (−X)^(j+1))`.
pub fn even_kernel(i: u32, j: u32) -> Kernel {
    let (ii, jj) = (i as i64, j as i64);
    if i > 0 {
        let (g, pi) = gamma_q(int(ii + jj) + rat(1, 2));
        let ratio = rat(1 - 2 * ii + 2 * jj, 1 - 2 * ii - 2 * jj);
        let f = gauss_at(
            int(-2 * jj),
            int(1 - 2 * ii),
            rat(3, 2) - int(ii + jj),
            &x_arg(),
        );
        let value = (&f * &neg_x_inv_pow((ii + jj) as i32)).scale(&(g * ratio));
        return Kernel { pi, value };
    }
    let p = RatFunc::var();
    let p_minus_2 = RatFunc::from_poly(PolyQ::from_ints(&[-2, 1]));
    let p_minus_1 = RatFunc::from_poly(PolyQ::from_ints(&[-1, 1]));
    let three_p_minus_2 = RatFunc::from_poly(PolyQ::from_ints(&[-2, 3]));

    let lead = Rational::new(
        factorial(2 * j + 1),
        BigInt::from(4u32).pow(j) * factorial(j),
    );
    let sign = if j % 2 == 0 { int(1) } else { int(-1) };
    let z = (-&(&p * &p))
        .checked_div(&(&three_p_minus_2 * &p_minus_2))
        .expect("nonzero");
    let f = gauss_at(int(-jj), rat(1, 2), rat(3, 2), &z);
    let ratio = (&p_minus_2.pow(j as i32).expect("power") * &p)
        .checked_div(&(&p_minus_1.pow(j as i32).expect("power") * &three_p_minus_2))
        .expect("nonzero");
    // √π · lead · ratio · F, with the (p−2)^j factor cancelling the poles of F.
    let first = (&ratio * &f).scale(&(lead * sign));

    let (g, pi) = gamma_q(int(jj) + rat(1, 2));
    debug_assert_eq!(pi, 1);
    let second = neg_x_inv_pow(jj as i32 + 1).scale(&(-g / int(2)));
    Kernel {
        pi: 1,
        value: &first + &second,
    }
}

/// Assembly of `E(n, p)` for `n ≥ 2`. Each summand is built in
/// Q(p), the sum is multiplied by the prefactor, and only then are the π
/// half-exponents required to cancel.
pub fn assemble(n: u32) -> Result<RadicalExpr, ArithError> {
    assert!(n >= 2, "n must be at least 2");
    let gamma_prod = gamma_product_half(n);
    let mut sum = PiGraded::new();
    let t = RadicalExpr::t();
    if n % 2 == 1 {
        let m = (n - 1) / 2;
        for i in 1..=m {
            for j in 1..=m {
                let minor = gamma_minor_det(
                    &GammaMinor::new(GammaVariant::One, m, i, j).expect("in range"),
                );
                add_kernel(&mut sum, &minor, &odd_kernel(i, j));
            }
        }
        // √π · √(p−1)^(n−2) · √(3p−2) / ∏Γ(i/2)
        let pref = PiScalar::sqrt_pi().checked_div(&gamma_prod)?;
        let radical = &RadicalExpr::sqrt_p_minus_1_pow(n - 2) * &t;
        let corr = sum.mul(&pref, &radical).collapse()?;
        Ok(&RadicalExpr::one() + &corr)
    } else {
        let m = n / 2;
        for j in 0..m {
            for i in 0..m {
                let minor = gamma_minor_det(
                    &GammaMinor::new(GammaVariant::Two, m, i, j).expect("in range"),
                );
                add_kernel(&mut sum, &minor, &even_kernel(i, j));
            }
        }
        let pref = PiScalar::one().checked_div(&gamma_prod)?;
        let radical = &RadicalExpr::sqrt_p_minus_1_pow(n - 2) * &t;
        sum.mul(&pref, &radical).collapse()
    }
}

fn add_kernel(sum: &mut PiGraded, minor: &PiScalar, kernel: &Kernel) {
    let scalar = minor * &PiScalar::new(int(1), kernel.pi);
    sum.add_term(&scalar, &RadicalExpr::from_ratfunc(kernel.value.clone()));
}
