use rand::Rng;
use rand_distr::StandardNormal;

/// A sampled symmetric matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GoeSample {
    pub n: usize,
    pub entries: Vec<f64>,
}

impl GoeSample {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn det(&self) -> f64 {
        det_lu(self.n, self.entries.clone())
    }
}

/// `B − uI` with `B` symmetric, diagonal entries `N(0, σ²)` and off-diagonal
/// entries `N(0, σ²/2)`. Diagonal and upper triangle are drawn row by row.
pub fn sample_goe<R: Rng + ?Sized>(n: usize, u: f64, sigma2: f64, rng: &mut R) -> GoeSample {
    assert!(n >= 1 && sigma2 > 0.0, "requires n >= 1 and sigma2 > 0");
    let sd_diag = sigma2.sqrt();
    let sd_off = (sigma2 / 2.0).sqrt();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let z: f64 = rng.sample(StandardNormal);
        entries[i * n + i] = sd_diag * z - u;
        for j in i + 1..n {
            let z: f64 = rng.sample(StandardNormal);
            let v = sd_off * z;
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    GoeSample { n, entries }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_lu(n: usize, mut a: Vec<f64>) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()))
            .expect("nonempty range");
        let pv = a[pivot * n + col];
        if pv == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
            det = -det;
        }
        det *= pv;
        for r in col + 1..n {
            let factor = a[r * n + col] / pv;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r * n + c] -= factor * a[col * n + c];
            }
        }
    }
    det
}
