use num_traits::{One, Zero};

use crate::exact_arith::{int, rat, PiScalar, Rational};
use crate::special_functions::gamma_half;

use super::GoeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaVariant {
    /// Entries `Γ(r+s−1/2)`, `r, s = 1..m`.
    One,
    /// Entries `Γ(r+s+1/2)`, `r, s = 0..m−1`.
    Two,
}

/// The Gamma matrix of size `m` with row `i` and column `j` deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaMinor {
    variant: GammaVariant,
    m: u32,
    i: u32,
    j: u32,
}

impl GammaMinor {
    pub fn new(variant: GammaVariant, m: u32, i: u32, j: u32) -> Result<Self, GoeError> {
        let lo = match variant {
            GammaVariant::One => 1,
            GammaVariant::Two => 0,
        };
        let hi = lo + m;
        if m == 0 || !(lo..hi).contains(&i) || !(lo..hi).contains(&j) {
            return Err(GoeError::IndexOutOfRange { m, i, j });
        }
        Ok(Self { variant, m, i, j })
    }

    pub fn variant(&self) -> GammaVariant {
        self.variant
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn indices(&self) -> (u32, u32) {
        (self.i, self.j)
    }

    /// Rational parts of the remaining entries; each entry carries one `√π`.
    fn rational_matrix(&self) -> Vec<Vec<Rational>> {
        let (range, shift) = match self.variant {
            GammaVariant::One => (1..=self.m, rat(-1, 2)),
            GammaVariant::Two => (0..=self.m - 1, rat(1, 2)),
        };
        range
            .clone()
            .filter(|&r| r != self.i)
            .map(|r| {
                range
                    .clone()
                    .filter(|&s| s != self.j)
                    .map(|s| {
                        let g =
                            gamma_half(&(int((r + s) as i64) + &shift)).expect("positive argument");
                        debug_assert_eq!(g.h(), 1);
                        g.q().clone()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Exact determinant over Q by elimination; the empty matrix has determinant 1.
pub(crate) fn det_rational(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// `det Γ^{i,j}` as `rational · π^((m−1)/2)`.
pub fn gamma_minor_det(spec: &GammaMinor) -> PiScalar {
    let q = det_rational(spec.rational_matrix());
    PiScalar::new(q, spec.m as i32 - 1)
}
