use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::exact_arith::{factorial, int, PiScalar, PolyQ, Rational};
use crate::special_functions::{gamma_product_half, hermite, std_normal_cdf, HermiteKind};

use super::gamma_minor::{gamma_minor_det, GammaMinor, GammaVariant};

/// `J_n(u) = E det(B − uI)` for `B ~ GOE(n)`, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetExpectation {
    pub n: u32,
    pub poly: PolyQ,
}

impl DetExpectation {
    pub fn eval(&self, u: f64) -> f64 {
        self.poly.eval_f64(u)
    }
}

fn he(k: u32) -> PolyQ {
    hermite(HermiteKind::Probabilist, k)
}

/// Rational part of `c` once the expected irrational factor `unit` is
/// divided out. Panics if `c` carries a different π or √2 factor.
fn rational_part(c: &PiScalar, unit: &PiScalar) -> Rational {
    if c.is_zero() {
        return Rational::zero();
    }
    assert!(
        c.same_irrational_part(unit),
        "coefficient {c} is not a rational multiple of {unit}"
    );
    c.q().clone()
}

/// `J_{2m}(u) = √π^m ∏_{i<m}(2i)! / (2^{m(m+1)} ∏_{i≤2m} Γ(i/2)) · H_{2m}(u)`.
pub fn j_even_closed(m: u32) -> DetExpectation {
    assert!(m >= 1, "m must be positive");
    let num: BigInt = (1..m).map(|i| factorial(2 * i)).product();
    let den = BigInt::from(2u32).pow(m * (m + 1));
    let lead = PiScalar::new(Rational::new(num, den), m as i32);
    let scale = lead
        .checked_div(&gamma_product_half(2 * m))
        .expect("Gamma product is nonzero");
    let q = rational_part(&scale, &PiScalar::one());
    DetExpectation {
        n: 2 * m,
        poly: hermite(HermiteKind::Physicist, 2 * m).scale(&q),
    }
}

/// `J_n(u)` for any `n ≥ 0` by expanding `det(B − uI)` over principal minors:
/// `J_n(u) = Σ_k C(n,k) (−u)^(n−k) E det GOE(k)`, where `E det GOE(k)` is `0`
/// for odd `k` (the law of `B` is invariant under `B ↦ −B`) and the constant
/// term of `J_k` for even `k`.
pub fn det_expectation(n: u32) -> DetExpectation {
    let mut poly = PolyQ::zero();
    for k in (0..=n).step_by(2) {
        let base = if k == 0 {
            Rational::one()
        } else {
            j_even_closed(k / 2).poly.coeff(0)
        };
        let binom = Rational::from_integer(factorial(n) / (factorial(k) * factorial(n - k)));
        let sign = if (n - k) % 2 == 0 { int(1) } else { int(-1) };
        poly = &poly + &PolyQ::monomial(binom * sign * base, (n - k) as usize);
    }
    DetExpectation { n, poly }
}

/// `scale · poly(u)`, where `scale` carries the π/√2 factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Channel {
    pub scale: PiScalar,
    pub poly: PolyQ,
}

/// `I_n(u) = J_n(u) + scale · A(u) e^(−u²/2) + B(u) Φ(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsDetExpr {
    n: u32,
    jpart: PolyQ,
    exp_channel: Channel,
    phi_poly: PolyQ,
}

impl AbsDetExpr {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn jpart(&self) -> &PolyQ {
        &self.jpart
    }

    pub fn exp_channel(&self) -> &Channel {
        &self.exp_channel
    }

    pub fn phi_poly(&self) -> &PolyQ {
        &self.phi_poly
    }

    /// `I_n(u) − J_n(u)`.
    pub fn correction_eval(&self, u: f64) -> f64 {
        let exp = self.exp_channel.scale.to_f64()
            * self.exp_channel.poly.eval_f64(u)
            * (-0.5 * u * u).exp();
        let phi = if self.phi_poly.is_zero() {
            0.0
        } else {
            self.phi_poly.eval_f64(u) * std_normal_cdf(u)
        };
        exp + phi
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.jpart.eval_f64(u) + self.correction_eval(u)
    }

    pub fn to_json(&self) -> Value {
        let coeffs = |p: &PolyQ| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        json!({
            "n": self.n,
            "jpart": coeffs(&self.jpart),
            "exp": {
                "scale": self.exp_channel.scale.to_string(),
                "coeffs": coeffs(&self.exp_channel.poly),
            },
            "phi": { "coeffs": coeffs(&self.phi_poly) },
        })
    }
}

/// The exact expected absolute determinant of `GOE(n; u, 1)`, split into the
/// polynomial part `J_n`, a Gaussian-damped channel, and a `Φ(u)` channel.
///
/// Even `n = 2m` sums `det Γ₁^{i,j} · (P_{2i−1}P_{2j−1} − P_{2j}P_{2i−2})`
/// over `1 ≤ i, j ≤ m` with prefactor `√(2π)/∏Γ(i/2)`; the result is `√2`
/// times a rational polynomial. Odd `n = 2m−1` sums
/// `det Γ₂^{i,j} · (P_{2i}P_{2j} − P_{2j+1}P_{2i−1})` over `0 ≤ i, j < m` with
/// prefactor `√2/∏Γ(i/2)`; the `i = 0` terms contain `P_{−1}` and feed the
/// `Φ` channel with rational coefficients.
pub fn abs_det_correction(n: u32) -> AbsDetExpr {
    assert!(n >= 1, "n must be positive");
    let gamma_prod = gamma_product_half(n);
    let mut exp_poly = PolyQ::zero();
    let mut phi_poly = PolyQ::zero();
    let unit;
    if n % 2 == 0 {
        let m = n / 2;
        let pref = PiScalar::with_sqrt2(int(1), 1)
            .checked_div(&gamma_prod)
            .expect("nonzero");
        unit = PiScalar::with_sqrt2(int(1), 0);
        for i in 1..=m {
            for j in 1..=m {
                let minor = GammaMinor::new(GammaVariant::One, m, i, j).expect("in range");
                let c = rational_part(&(&pref * &gamma_minor_det(&minor)), &unit);
                let det = &(&he(2 * i - 1) * &he(2 * j - 1)) - &(&he(2 * j) * &he(2 * i - 2));
                exp_poly = &exp_poly + &det.scale(&c);
            }
        }
    } else {
        let m = (n + 1) / 2;
        let pref = PiScalar::with_sqrt2(int(1), 0)
            .checked_div(&gamma_prod)
            .expect("nonzero");
        unit = PiScalar::with_sqrt2(int(1), -1);
        // −P_{−1}(u) e^(−u²/2) = √(2π) Φ(u)
        let cdf_factor = PiScalar::with_sqrt2(int(1), 1);
        for i in 0..m {
            for j in 0..m {
                let minor = GammaMinor::new(GammaVariant::Two, m, i, j).expect("in range");
                let scalar = &pref * &gamma_minor_det(&minor);
                let c = rational_part(&scalar, &unit);
                if i == 0 {
                    exp_poly = &exp_poly + &he(2 * j).scale(&c);
                    let d = rational_part(&(&scalar * &cdf_factor), &PiScalar::one());
                    phi_poly = &phi_poly + &he(2 * j + 1).scale(&d);
                } else {
                    let det = &(&he(2 * i) * &he(2 * j)) - &(&he(2 * j + 1) * &he(2 * i - 1));
                    exp_poly = &exp_poly + &det.scale(&c);
                }
            }
        }
    }
    AbsDetExpr {
        n,
        jpart: det_expectation(n).poly,
        exp_channel: Channel {
            scale: unit,
            poly: exp_poly,
        },
        phi_poly,
    }
}

/// Numeric `I_n(u) = E|det(B − uI)|`, `B ~ GOE(n)`.
pub fn abs_det_eval(n: u32, u: f64) -> f64 {
    abs_det_correction(n).eval(u)
}

/// Folded-normal mean `E|X|` for `X ~ N(−u, 1)`.
pub fn folded_normal_mean(u: f64) -> f64 {
    (2.0 / PI).sqrt() * (-0.5 * u * u).exp() - u + 2.0 * u * std_normal_cdf(u)
}
