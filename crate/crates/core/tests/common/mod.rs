//! Independent reference computations for integration tests. None of these
//! call the library's transform.
#![allow(dead_code)]

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// `f^(S) = 2^-n sum_x f(x) (-1)^{|S & x|}`, evaluated term by term.
pub fn definition_sum(values: &[f64]) -> Vec<f64> {
    let len = values.len();
    (0..len)
        .map(|s| {
            let total: f64 = (0..len)
                .map(|x| if (s & x).count_ones() % 2 == 0 { values[x] } else { -values[x] })
                .sum();
            total / len as f64
        })
        .collect()
}

/// Sum of squared coefficients above `d`, from a coefficient vector.
pub fn tail_of(coeffs: &[f64], d: usize) -> f64 {
    coeffs.iter().enumerate().filter(|(s, _)| s.count_ones() as usize > d).map(|(_, c)| c * c).sum()
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `sum_{|x| = w} chi_S(x)` for `|S| = s` in dimension `k`.
fn krawtchouk(k: i128, s: i128, w: i128) -> i128 {
    (0..=s).map(|j| if j % 2 == 0 { 1 } else { -1 } * binomial(s, j) * binomial(k - s, w - j)).sum()
}

/// Tail `W^{>d}` of the hockey stick on `k` coordinates, computed exactly over
/// weight classes in integer arithmetic and rounded once.
pub fn hockey_tail_exact(k: usize, d: usize) -> f64 {
    let k = k as i128;
    // k * 2^k * f^(S) for |S| = s, with k * hs(w) = min(k, 2w).
    let numerator: i128 = (d as i128 + 1..=k)
        .map(|s| {
            let c: i128 = (0..=k).map(|w| (2 * w).min(k) * krawtchouk(k, s, w)).sum();
            binomial(k, s) * c * c
        })
        .sum();
    let denominator = (k * k) as f64 * 4f64.powi(k as i32);
    numerator as f64 / denominator
}

/// `Pr[h(x) != h(y)]` by summing over all pairs with their flip probability.
pub fn noise_direct(values: &[f64], n: usize, alpha: f64) -> f64 {
    let len = values.len();
    let mut total = 0.0;
    for x in 0..len {
        for y in 0..len {
            if values[x] != values[y] {
                let flips = (x ^ y).count_ones() as i32;
                total += alpha.powi(flips) * (1.0 - alpha).powi(n as i32 - flips);
            }
        }
    }
    total / len as f64
}

/// Noise sensitivity by applying the noise operator one coordinate at a time:
/// `NS = 2 (E[h] - E[h T h])` for 0/1-valued `h`.
pub fn noise_by_operator(values: &[f64], n: usize, alpha: f64) -> f64 {
    let mut smoothed = values.to_vec();
    for i in 0..n {
        let prev = smoothed.clone();
        for x in 0..values.len() {
            smoothed[x] = (1.0 - alpha) * prev[x] + alpha * prev[x ^ (1 << i)];
        }
    }
    let len = values.len() as f64;
    let mean: f64 = values.iter().sum::<f64>() / len;
    let corr: f64 = values.iter().zip(&smoothed).map(|(a, b)| a * b).sum::<f64>() / len;
    2.0 * (mean - corr)
}

/// Recursive coefficient computation by halving on the top coordinate.
pub fn recursive_transform(values: &[f64]) -> Vec<f64> {
    if values.len() == 1 {
        return values.to_vec();
    }
    let half = values.len() / 2;
    let lo = recursive_transform(&values[..half]);
    let hi = recursive_transform(&values[half..]);
    let mut out = vec![0.0; values.len()];
    for s in 0..half {
        out[s] = (lo[s] + hi[s]) / 2.0;
        out[s + half] = (lo[s] - hi[s]) / 2.0;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HockeyFixture {
    pub k: usize,
    pub d: usize,
    pub tail: f64,
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TalagrandFixture {
    pub k: usize,
    pub seeds: usize,
    pub master_seed: u64,
    pub alpha: f64,
    pub ns_min: f64,
    pub ns_mean: f64,
    pub ns_max: f64,
    pub tail_min: f64,
    pub tail_mean: f64,
    pub tail_max: f64,
    pub chain_failures: usize,
    /// Floor the mean noise sensitivity must stay above.
    pub ns_mean_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub hockey: Vec<HockeyFixture>,
    pub hockey_scaled_min: f64,
    pub talagrand: TalagrandFixture,
    pub lipschitz_corpus: (usize, u64),
    pub lipschitz_alphas: Vec<f64>,
    pub lipschitz_max_ratio: f64,
    pub census_eps: Vec<f64>,
    pub census_max_statistic: f64,
}

pub fn calibration_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/calibration.json")
}

pub fn load_calibration() -> Calibration {
    let text = std::fs::read_to_string(calibration_path()).expect("calibration fixture is checked in");
    serde_json::from_str(&text).expect("calibration fixture parses")
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
