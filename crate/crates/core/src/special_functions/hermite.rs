use crate::exact_arith::{int, PolyQ};

use super::std_normal_cdf;

/// Which Hermite convention: `He_k` (weight `e^(−x²/2)`) or `H_k`
/// (weight `e^(−x²)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HermiteKind {
    Probabilist,
    Physicist,
}

/// The `k`-th Hermite polynomial, built from the three-term recurrences
/// `He_{k+1} = x He_k − k He_{k−1}` and `H_{k+1} = 2x H_k − 2k H_{k−1}`.
pub fn hermite(kind: HermiteKind, k: u32) -> PolyQ {
    let (lead, step) = match kind {
        HermiteKind::Probabilist => (int(1), 1),
        HermiteKind::Physicist => (int(2), 2),
    };
    let mut prev = PolyQ::one();
    if k == 0 {
        return prev;
    }
    let x_term = PolyQ::monomial(lead, 1);
    let mut cur = x_term.clone();
    for j in 1..k {
        let next = &(&x_term * &cur) - &prev.scale(&int(step * j as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_k`: the probabilists' Hermite polynomial for `k ≥ 0`, and for
/// `k = −1` the transcendental function `−√(2π) e^(x²/2) Φ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PkFunction {
    k: i32,
    poly: Option<PolyQ>,
}

impl PkFunction {
    /// Panics for `k < −1`.
    pub fn new(k: i32) -> Self {
        assert!(k >= -1, "P_k is defined for k >= -1");
        let poly = (k >= 0).then(|| hermite(HermiteKind::Probabilist, k as u32));
        Self { k, poly }
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn poly(&self) -> Option<&PolyQ> {
        self.poly.as_ref()
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.poly {
            Some(p) => p.eval_f64(x),
            None => -(2.0 * std::f64::consts::PI).sqrt() * (0.5 * x * x).exp() * std_normal_cdf(x),
        }
    }

    /// `P_k(x) e^(−x²/2)`, evaluated without the `e^(x²/2)` blow-up of the
    /// `k = −1` branch.
    pub fn eval_damped(&self, x: f64) -> f64 {
        match &self.poly {
            Some(p) => p.eval_f64(x) * (-0.5 * x * x).exp(),
            None => -(2.0 * std::f64::consts::PI).sqrt() * std_normal_cdf(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Rational;

    #[test]
    fn low_order_polynomials() {
        assert_eq!(hermite(HermiteKind::Probabilist, 0), PolyQ::one());
        assert_eq!(
            hermite(HermiteKind::Probabilist, 2),
            PolyQ::from_ints(&[-1, 0, 1])
        );
        assert_eq!(
            hermite(HermiteKind::Physicist, 2),
            PolyQ::from_ints(&[-2, 0, 4])
        );
        assert_eq!(
            hermite(HermiteKind::Physicist, 3),
            PolyQ::from_ints(&[0, -12, 0, 8])
        );
        assert_eq!(
            hermite(HermiteKind::Probabilist, 4),
            PolyQ::from_ints(&[3, 0, -6, 0, 1])
        );
    }

    /// Rodrigues oracle: `(−1)^k e^(w x²) dᵏ/dxᵏ e^(−w x²)` equals `Q_k(x)` where
    /// `Q_0 = 1`, `Q_{k+1} = 2w x Q_k − Q_k'`.
    fn rodrigues(weight: Rational, k: u32) -> PolyQ {
        let mut q = PolyQ::one();
        let two_w_x = PolyQ::monomial(weight * int(2), 1);
        for _ in 0..k {
            q = &(&two_w_x * &q) - &q.derivative();
        }
        q
    }

    #[test]
    fn recurrence_matches_rodrigues() {
        for k in 0..=10 {
            assert_eq!(hermite(HermiteKind::Physicist, k), rodrigues(int(1), k));
            assert_eq!(
                hermite(HermiteKind::Probabilist, k),
                rodrigues(crate::exact_arith::rat(1, 2), k)
            );
        }
    }

    #[test]
    fn p_minus_one_branch() {
        let p = PkFunction::new(-1);
        let v = p.eval(0.0);
        assert!((v + (2.0 * std::f64::consts::PI).sqrt() * 0.5).abs() < 1e-14);
        assert!((p.eval_damped(1.3) - p.eval(1.3) * (-0.5f64 * 1.69).exp()).abs() < 1e-13);
    }
}
