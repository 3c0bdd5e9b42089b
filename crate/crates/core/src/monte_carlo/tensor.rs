use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;

/// Symmetric tensor in `S^p(ℝⁿ)`, one value per sorted index class
/// `i₁ ≤ … ≤ i_p` (indices are 0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    pub n: usize,
    pub p: usize,
    pub values: BTreeMap<Vec<usize>, f64>,
}

/// Coefficients `c_k` of `x₁^k x₂^(d−k)`, `k = 0..=d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    pub coeffs: Vec<f64>,
}

impl BinaryForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }
}

/// All sorted multi-indices of length `p` over `0..n`, in lexicographic order.
pub fn index_classes(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, p, i, cur, out);
            cur.pop();
        }
    }
    rec(n, p, 0, &mut cur, &mut out);
    out
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `α₁! ⋯ αₙ! / p!` for the class of `idx`.
pub fn bombieri_variance(n: usize, idx: &[usize]) -> f64 {
    let mut counts = vec![0usize; n];
    for &i in idx {
        counts[i] += 1;
    }
    counts.iter().map(|&a| factorial(a)).product::<f64>() / factorial(idx.len())
}

/// Independent `N(0, α!/p!)` entries, one per index class, drawn in
/// lexicographic class order.
pub fn sample_bombieri_tensor<R: Rng + ?Sized>(n: usize, p: usize, rng: &mut R) -> SymTensor {
    assert!(n >= 1 && p >= 1, "requires n >= 1 and p >= 1");
    let values = index_classes(n, p)
        .into_iter()
        .map(|idx| {
            let z: f64 = rng.sample(StandardNormal);
            let sd = bombieri_variance(n, &idx).sqrt();
            (idx, sd * z)
        })
        .collect();
    SymTensor { n, p, values }
}

fn binom(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl SymTensor {
    /// Value of the class with `ones` indices equal to 0 and the rest equal
    /// to 1 (binary tensors only).
    fn binary_entry(&self, ones: usize) -> f64 {
        let idx: Vec<usize> = (0..self.p).map(|k| usize::from(k >= ones)).collect();
        self.values[&idx]
    }

    /// The tensor of the binary form `Σ_k a_k x₁^k x₂^(p−k)`, where each
    /// class entry is `a_k / C(p, k)`.
    pub fn from_binary_form(p: usize, a: &[f64]) -> Self {
        assert_eq!(a.len(), p + 1);
        let values = index_classes(2, p)
            .into_iter()
            .map(|idx| {
                let ones = idx.iter().filter(|&&i| i == 0).count();
                (idx, a[ones] / binom(p, ones))
            })
            .collect();
        Self { n: 2, p, values }
    }
}

/// `f = x₂ (v x^(p−1))₁ − x₁ (v x^(p−1))₂`, whose projective zeros are the
/// eigenvector classes of `v`. With `v_{a,b}` the class of `a` first and `b`
/// second indices, the coefficient of `x₁^k x₂^(p−k)` is
/// `C(p−1,k) v_{k+1,p−1−k} − C(p−1,k−1) v_{k−1,p−k+1}`.
pub fn eigenpair_form_n2(v: &SymTensor) -> BinaryForm {
    assert_eq!(v.n, 2, "binary tensors only");
    let p = v.p;
    let coeffs = (0..=p)
        .map(|k| {
            let first = if k < p {
                binom(p - 1, k) * v.binary_entry(k + 1)
            } else {
                0.0
            };
            let second = if k > 0 {
                binom(p - 1, k - 1) * v.binary_entry(k - 1)
            } else {
                0.0
            };
            first - second
        })
        .collect();
    BinaryForm { coeffs }
}
