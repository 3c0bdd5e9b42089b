use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use serde_json::{json, Value};

use crate::exact_arith::rat;
use crate::special_functions::gamma_half;

use super::goe::{det_lu, sample_goe};
use super::roots::count_real_projective_roots;
use super::tensor::{eigenpair_form_n2, sample_bombieri_tensor};

pub const MIN_SAMPLES: u64 = 100;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum McError {
    #[error("invalid estimand: {0}")]
    InvalidEstimand(String),
    #[error("n_samples must be at least {MIN_SAMPLES}, got {0}")]
    TooFewSamples(u64),
    #[error("workers must be at least 1")]
    NoWorkers,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Estimand {
    /// `|det(B − uI)|`, `B` symmetric with diagonal variance `σ²`.
    GoeAbsDet {
        n: usize,
        u: f64,
        sigma2: f64,
    },
    GoeDet {
        n: usize,
        u: f64,
        sigma2: f64,
    },
    /// `√π/(√2^(n−1) Γ(n/2)) · |det(√p w I − √(2(p−1)) A)|`, `A` standard
    /// GOE of size `n−1`, `w ~ N(0,1)`.
    ReddGoeRoute {
        n: usize,
        p: u64,
    },
    /// Same estimand drawn as `√π √(p−1)^(n−1)/Γ(n/2) · |det(B − uI)|` with
    /// `u ~ N(0, p/(2(p−1)))`.
    ReddGoeRouteRescaled {
        n: usize,
        p: u64,
    },
    /// Real eigenvector classes of a binary Bombieri tensor of order `p`.
    ReddN2 {
        n: usize,
        p: u64,
    },
}

impl Estimand {
    pub fn name(&self) -> &'static str {
        match self {
            Self::GoeAbsDet { .. } => "goe-absdet",
            Self::GoeDet { .. } => "goe-det",
            Self::ReddGoeRoute { .. } => "redd-goe-route",
            Self::ReddGoeRouteRescaled { .. } => "redd-goe-route-rescaled",
            Self::ReddN2 { .. } => "redd-n2",
        }
    }

    pub fn params(&self) -> Value {
        match *self {
            Self::GoeAbsDet { n, u, sigma2 } | Self::GoeDet { n, u, sigma2 } => {
                json!({ "n": n, "u": u, "sigma2": sigma2 })
            }
            Self::ReddGoeRoute { n, p }
            | Self::ReddGoeRouteRescaled { n, p }
            | Self::ReddN2 { n, p } => json!({ "n": n, "p": p }),
        }
    }

    pub fn is_count_valued(&self) -> bool {
        matches!(self, Self::ReddN2 { .. })
    }

    fn validate(&self) -> Result<(), McError> {
        let bad = |m: String| Err(McError::InvalidEstimand(m));
        match *self {
            Self::GoeAbsDet { n, u, sigma2 } | Self::GoeDet { n, u, sigma2 } => {
                if n == 0 {
                    return bad("n must be at least 1".into());
                }
                if !(sigma2 > 0.0 && sigma2.is_finite()) || !u.is_finite() {
                    return bad("requires finite u and sigma2 > 0".into());
                }
            }
            Self::ReddGoeRoute { n, p } | Self::ReddGoeRouteRescaled { n, p } => {
                if n < 2 || p < 2 {
                    return bad("requires n >= 2 and p >= 2".into());
                }
            }
            Self::ReddN2 { n, p } => {
                if n != 2 {
                    return bad(format!("redd-n2 requires n = 2, got {n}"));
                }
                if p < 1 {
                    return bad("requires p >= 1".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatorResult {
    pub estimand: String,
    pub params: Value,
    pub mean: f64,
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub workers: u32,
}

impl EstimatorResult {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    pub bins: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.bins.values().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("count,frequency\n");
        for (k, v) in &self.bins {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McRun {
    pub result: EstimatorResult,
    pub histogram: Option<Histogram>,
    /// Samples whose eigenpair form had a repeated root.
    pub anomalies: u64,
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * (self.n as f64 * other.n as f64) / n as f64;
        Self { n, mean, m2 }
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64)
            .sqrt()
            .max(0.0)
    }
}

#[derive(Default)]
struct Partial {
    acc: Welford,
    hist: BTreeMap<u64, u64>,
    anomalies: u64,
}

fn gamma_half_f64(k: u64) -> f64 {
    gamma_half(&rat(k as i64, 2))
        .expect("positive argument")
        .to_f64()
}

/// Worker stream `k`: ChaCha8 keyed by `seed`, stream id `k`.
pub fn worker_rng(seed: u64, worker: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

fn run_worker(est: &Estimand, count: u64, mut rng: ChaCha8Rng) -> Partial {
    let mut part = Partial::default();
    match *est {
        Estimand::GoeAbsDet { n, u, sigma2 } => {
            for _ in 0..count {
                part.acc
                    .push(sample_goe(n, u, sigma2, &mut rng).det().abs());
            }
        }
        Estimand::GoeDet { n, u, sigma2 } => {
            for _ in 0..count {
                part.acc.push(sample_goe(n, u, sigma2, &mut rng).det());
            }
        }
        Estimand::ReddGoeRoute { n, p } => {
            let pf = p as f64;
            let m = n - 1;
            let scale = std::f64::consts::PI.sqrt()
                / (2f64.sqrt().powi(m as i32) * gamma_half_f64(n as u64));
            let (a, b) = (pf.sqrt(), (2.0 * (pf - 1.0)).sqrt());
            for _ in 0..count {
                let w: f64 = StandardNormal.sample(&mut rng);
                let g = sample_goe(m, 0.0, 1.0, &mut rng);
                let mut entries: Vec<f64> = g.entries.iter().map(|x| -b * x).collect();
                for i in 0..m {
                    entries[i * m + i] += a * w;
                }
                part.acc.push(scale * det_lu(m, entries).abs());
            }
        }
        Estimand::ReddGoeRouteRescaled { n, p } => {
            let pf = p as f64;
            let m = n - 1;
            let scale = std::f64::consts::PI.sqrt() * (pf - 1.0).sqrt().powi(m as i32)
                / gamma_half_f64(n as u64);
            let sd = (pf / (2.0 * (pf - 1.0))).sqrt();
            for _ in 0..count {
                let w: f64 = StandardNormal.sample(&mut rng);
                part.acc
                    .push(scale * sample_goe(m, sd * w, 1.0, &mut rng).det().abs());
            }
        }
        Estimand::ReddN2 { p, .. } => {
            for _ in 0..count {
                let form = loop {
                    let f = eigenpair_form_n2(&sample_bombieri_tensor(2, p as usize, &mut rng));
                    if !f.is_zero() {
                        break f;
                    }
                };
                let r = count_real_projective_roots(&form);
                part.anomalies += u64::from(r.anomaly);
                *part.hist.entry(r.count as u64).or_default() += 1;
                part.acc.push(r.count as f64);
            }
        }
    }
    part
}

/// Splits `n_samples` over `workers` independent streams, runs them on
/// scoped threads and merges the partial statistics in worker order.
pub fn estimate(est: &Estimand, n_samples: u64, seed: u64, workers: u32) -> Result<McRun, McError> {
    est.validate()?;
    if n_samples < MIN_SAMPLES {
        return Err(McError::TooFewSamples(n_samples));
    }
    if workers == 0 {
        return Err(McError::NoWorkers);
    }
    let w = workers as u64;
    let share = |k: u64| n_samples / w + u64::from(k < n_samples % w);
    let partials: Vec<Partial> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|k| scope.spawn(move || run_worker(est, share(k as u64), worker_rng(seed, k))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });

    let mut acc = Welford::default();
    let mut hist = BTreeMap::new();
    let mut anomalies = 0;
    for part in partials {
        acc = acc.merge(part.acc);
        anomalies += part.anomalies;
        for (k, v) in part.hist {
            *hist.entry(k).or_insert(0) += v;
        }
    }
    let result = EstimatorResult {
        estimand: est.name().to_string(),
        params: est.params(),
        mean: acc.mean,
        stderr: acc.stderr(),
        n_samples,
        seed,
        workers,
    };
    let histogram = est.is_count_valued().then_some(Histogram { bins: hist });
    Ok(McRun {
        result,
        histogram,
        anomalies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(mean: f64, se: f64, exact: f64) -> f64 {
        (mean - exact).abs() / se
    }

    #[test]
    fn welford_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..50).map(|i| ((i * 37) % 11) as f64 * 0.3).collect();
        let mut all = Welford::default();
        xs.iter().for_each(|&x| all.push(x));
        let (mut a, mut b) = (Welford::default(), Welford::default());
        xs[..17].iter().for_each(|&x| a.push(x));
        xs[17..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert!((m.mean - all.mean).abs() < 1e-12);
        assert!((m.m2 - all.m2).abs() < 1e-10);
    }

    #[test]
    fn half_normal_mean() {
        let est = Estimand::GoeAbsDet {
            n: 1,
            u: 0.0,
            sigma2: 1.0,
        };
        let r = estimate(&est, 200_000, 11, 4).unwrap().result;
        assert!(z(r.mean, r.stderr, (2.0 / std::f64::consts::PI).sqrt()) < 4.0);
    }

    #[test]
    fn goe_route_n2() {
        let r = estimate(&Estimand::ReddGoeRoute { n: 2, p: 3 }, 200_000, 5, 4)
            .unwrap()
            .result;
        assert!(z(r.mean, r.stderr, 7f64.sqrt()) < 4.0, "{r:?}");
    }

    #[test]
    fn p2_always_two() {
        let run = estimate(&Estimand::ReddN2 { n: 2, p: 2 }, 1000, 3, 2).unwrap();
        assert_eq!(run.result.mean, 2.0);
        assert_eq!(run.result.stderr, 0.0);
        assert_eq!(run.histogram.unwrap().bins, BTreeMap::from([(2, 1000)]));
    }

    #[test]
    fn parity_and_bounds() {
        for p in 1..=6u64 {
            let run = estimate(&Estimand::ReddN2 { n: 2, p }, 10_000, p, 3).unwrap();
            let h = run.histogram.unwrap();
            assert_eq!(h.total(), 10_000);
            for &k in h.bins.keys() {
                assert_eq!(k % 2, p % 2, "p = {p}, count {k}");
                assert!(k >= 1 && k <= p, "p = {p}, count {k}");
            }
        }
    }

    #[test]
    fn reproducible_bitwise() {
        let est = Estimand::GoeDet {
            n: 3,
            u: 0.5,
            sigma2: 1.0,
        };
        let a = estimate(&est, 5000, 42, 3).unwrap();
        let b = estimate(&est, 5000, 42, 3).unwrap();
        assert_eq!(a.result.mean.to_bits(), b.result.mean.to_bits());
        assert_eq!(a.result.stderr.to_bits(), b.result.stderr.to_bits());
        assert_ne!(
            estimate(&est, 5000, 43, 3).unwrap().result.mean,
            a.result.mean
        );
    }

    #[test]
    fn worker_counts_agree() {
        let est = Estimand::GoeAbsDet {
            n: 3,
            u: 1.0,
            sigma2: 1.0,
        };
        let a = estimate(&est, 50_000, 9, 1).unwrap().result;
        let b = estimate(&est, 50_000, 9, 4).unwrap().result;
        let se = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.mean - b.mean).abs() < 4.0 * se);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            estimate(&Estimand::ReddN2 { n: 3, p: 3 }, 1000, 0, 1).unwrap_err(),
            McError::InvalidEstimand("redd-n2 requires n = 2, got 3".into())
        );
        let est = Estimand::GoeDet {
            n: 2,
            u: 0.0,
            sigma2: 1.0,
        };
        assert_eq!(
            estimate(&est, 99, 0, 1).unwrap_err(),
            McError::TooFewSamples(99)
        );
        assert_eq!(estimate(&est, 100, 0, 0).unwrap_err(), McError::NoWorkers);
        assert!(estimate(
            &Estimand::GoeDet {
                n: 2,
                u: 0.0,
                sigma2: 0.0
            },
            100,
            0,
            1
        )
        .is_err());
    }

    #[test]
    fn histogram_csv() {
        let h = Histogram {
            bins: BTreeMap::from([(3, 4), (1, 6)]),
        };
        assert_eq!(h.to_csv(), "count,frequency\n1,6\n3,4\n");
    }

    #[test]
    fn result_json_keys() {
        let r = estimate(&Estimand::ReddGoeRoute { n: 3, p: 2 }, 100, 0, 1)
            .unwrap()
            .result;
        let v = r.to_json();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            [
                "estimand",
                "mean",
                "n_samples",
                "params",
                "seed",
                "stderr",
                "workers"
            ]
        );
    }
}
