use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::samples::SampleSet;
use crate::hypercube::walsh::fwht;
use crate::hypercube::{CubeFunction, SparsePolynomial};
use crate::numeric::{binomial, character, compress, expand, one_based, pairwise_sum_by, popcount};
use crate::{Error, Result};

pub const DEFAULT_FEATURE_CAP: usize = 4096;
const HISTOGRAM_MAX_BITS: usize = 20;
/// Squared pivot ratio of the Cholesky factor below which the system counts as singular.
const SINGULAR_PIVOT_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverPath {
    Cholesky,
    Ridge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub solver: SolverPath,
    pub ridge_lambda: Option<f64>,
    /// `(min_k L_kk / max_k L_kk)^2` for the Cholesky factor of the Gram matrix.
    pub pivot_ratio: f64,
    pub features: usize,
    pub samples: usize,
    /// Mean squared error of the unclipped polynomial on the training set.
    pub training_mse: f64,
}

/// A low-degree polynomial over a junta, with optional clamping to `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnedModel {
    pub n: usize,
    pub junta: Vec<usize>,
    pub degree: usize,
    pub clip: bool,
    pub polynomial: SparsePolynomial,
    pub diagnostics: FitDiagnostics,
}

impl LearnedModel {
    pub fn predict(&self, x: usize) -> f64 {
        if self.clip {
            self.polynomial.eval_clamped(x)
        } else {
            self.polynomial.eval(x)
        }
    }

    pub fn to_table(&self) -> Result<CubeFunction> {
        let raw = self.polynomial.to_function()?;
        if self.clip {
            raw.map(|_, v| v.clamp(0.0, 1.0))
        } else {
            Ok(raw)
        }
    }

    pub fn with_clip(&self, clip: bool) -> LearnedModel {
        LearnedModel { clip, ..self.clone() }
    }
}

/// `sum_{j <= d} C(size, j)`.
pub fn feature_count(size: usize, d: usize) -> u64 {
    (0..=d.min(size)).map(|j| binomial(size as u64, j as u64)).fold(0u64, u64::saturating_add)
}

/// All subsets of `k` bits with at most `d` elements, ascending.
fn subsets_up_to(k: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0usize];
    for j in 1..=d.min(k) {
        let mut s = (1usize << j) - 1;
        while s < 1 << k {
            out.push(s);
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    out.sort_unstable();
    out
}

/// Least-squares fit of `sum_{S in I, |S| <= d} c_S chi_S` to the samples.
pub fn fit_low_degree(samples: &SampleSet, coords: usize, d: usize, feature_cap: usize) -> Result<LearnedModel> {
    let n = samples.n();
    if coords >> n != 0 {
        return Err(Error::InvalidParameter(format!("junta {coords:#b} exceeds dimension {n}")));
    }
    let k = popcount(coords);
    let d = d.min(k);
    let count = feature_count(k, d);
    if count > feature_cap as u64 {
        return Err(Error::FeatureCapExceeded { features: count as usize, cap: feature_cap });
    }
    let count = count as usize;
    let m = samples.len();
    if m < count {
        return Err(Error::Underdetermined { features: count, samples: m });
    }

    // Features are subsets of the junta, as masks over the compressed bits.
    let features = subsets_up_to(k, d);

    let (gram_entry, rhs) = gram_system(samples, coords, k, &features);
    let scale = 1.0 / m as f64;
    let gram = DMatrix::from_fn(count, count, |a, b| gram_entry(features[a] ^ features[b]) * scale);
    let rhs = DVector::from_iterator(count, rhs.iter().map(|v| v * scale));

    let (solution, solver, ridge_lambda, pivot_ratio) = solve(gram, &rhs)?;

    let mut poly = SparsePolynomial::zero(n)?;
    for (&s, &c) in features.iter().zip(solution.iter()) {
        poly.add_term(expand(s, coords), c)?;
    }
    let ex = samples.examples();
    let training_mse = pairwise_sum_by(ex.len(), |i| {
        let r = poly.eval(ex[i].0) - ex[i].1;
        r * r
    }) / m as f64;
    Ok(LearnedModel {
        n,
        junta: one_based(coords),
        degree: d,
        clip: false,
        polynomial: poly,
        diagnostics: FitDiagnostics { solver, ridge_lambda, pivot_ratio, features: count, samples: m, training_mse },
    })
}

type GramEntry = Box<dyn Fn(usize) -> f64 + Sync>;

/// Returns `C(T) = sum_x chi_T(x)` as a lookup over compressed masks, and the
/// right-hand side `Y(S) = sum_x y chi_S(x)` for each feature.
fn gram_system(samples: &SampleSet, coords: usize, k: usize, features: &[usize]) -> (GramEntry, Vec<f64>) {
    if k <= HISTOGRAM_MAX_BITS {
        gram_from_histogram(samples, coords, k, features)
    } else {
        gram_direct(samples, coords, features)
    }
}

/// Transforms the per-point count and label-sum histograms over the junta bits.
fn gram_from_histogram(samples: &SampleSet, coords: usize, k: usize, features: &[usize]) -> (GramEntry, Vec<f64>) {
    let mut counts = vec![0.0; 1 << k];
    let mut sums = vec![0.0; 1 << k];
    for &(x, y) in samples.examples() {
        let c = compress(x, coords);
        counts[c] += 1.0;
        sums[c] += y;
    }
    fwht(&mut counts);
    fwht(&mut sums);
    let rhs = features.iter().map(|&s| sums[s]).collect();
    (Box::new(move |t| counts[t]), rhs)
}

/// Sums characters over the samples for every product of two features.
fn gram_direct(samples: &SampleSet, coords: usize, features: &[usize]) -> (GramEntry, Vec<f64>) {
    let compressed: Vec<(usize, f64)> = samples.examples().iter().map(|&(x, y)| (compress(x, coords), y)).collect();
    let mut needed: Vec<usize> = features.iter().flat_map(|&a| features.iter().map(move |&b| a ^ b)).collect();
    needed.sort_unstable();
    needed.dedup();
    let table: BTreeMap<usize, f64> = needed
        .par_iter()
        .map(|&t| (t, pairwise_sum_by(compressed.len(), |i| character(t, compressed[i].0))))
        .collect();
    let rhs = features
        .par_iter()
        .map(|&s| pairwise_sum_by(compressed.len(), |i| compressed[i].1 * character(s, compressed[i].0)))
        .collect();
    (Box::new(move |t| table[&t]), rhs)
}

fn solve(gram: DMatrix<f64>, rhs: &DVector<f64>) -> Result<(DVector<f64>, SolverPath, Option<f64>, f64)> {
    let dim = gram.nrows();
    let pivot_ratio = |l: &DMatrix<f64>| {
        let diag = l.diagonal();
        let max = diag.iter().fold(0.0f64, |a, &v| a.max(v));
        let min = diag.iter().fold(f64::INFINITY, |a, &v| a.min(v));
        if max > 0.0 { (min / max).powi(2) } else { 0.0 }
    };
    if let Some(chol) = gram.clone().cholesky() {
        let ratio = pivot_ratio(&chol.l());
        if ratio > SINGULAR_PIVOT_RATIO {
            return Ok((chol.solve(rhs), SolverPath::Cholesky, None, ratio));
        }
    }
    let lambda = 1e-8 * gram.trace() / dim as f64;
    let lambda = if lambda > 0.0 { lambda } else { 1e-8 };
    let mut ridged = gram;
    for i in 0..dim {
        ridged[(i, i)] += lambda;
    }
    let chol = ridged
        .cholesky()
        .ok_or_else(|| Error::Precondition("normal equations are not positive definite even with ridge".into()))?;
    let ratio = pivot_ratio(&chol.l());
    Ok((chol.solve(rhs), SolverPath::Ridge, Some(lambda), ratio))
}

/// Exact `||h - f||_2` over the full table, honouring the model's clip flag.
pub fn evaluate_error(model: &LearnedModel, f: &CubeFunction) -> Result<f64> {
    if model.n != f.n() {
        return Err(Error::DimensionMismatch { left: model.n, right: f.n() });
    }
    model.to_table()?.l2_distance(f)
}

/// Root mean squared error on a holdout set.
pub fn evaluate_error_empirical(model: &LearnedModel, holdout: &SampleSet) -> Result<f64> {
    if model.n != holdout.n() {
        return Err(Error::DimensionMismatch { left: model.n, right: holdout.n() });
    }
    let ex = holdout.examples();
    let mse = pairwise_sum_by(ex.len(), |i| {
        let r = model.predict(ex[i].0) - ex[i].1;
        r * r
    }) / ex.len() as f64;
    Ok(mse.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learner::draw_samples;

    #[test]
    fn exact_recovery_of_low_degree_target() {
        let p = SparsePolynomial::from_terms(5, [(0, 0.5), (0b00011, -0.25), (0b10000, 0.125)]).unwrap();
        let f = p.to_function().unwrap();
        let model = fit_low_degree(&SampleSet::exhaustive(&f), 0b10011, 2, DEFAULT_FEATURE_CAP).unwrap();
        for (&s, &c) in p.terms() {
            assert!((model.polynomial.coefficient(s) - c).abs() < 1e-8);
        }
        assert_eq!(model.diagnostics.solver, SolverPath::Cholesky);
        assert!(evaluate_error(&model, &f).unwrap() < 1e-8);
    }

    #[test]
    fn degree_zero_is_mean() {
        let f = CubeFunction::from_fn(4, |x| (x % 3) as f64).unwrap();
        let s = draw_samples(&f, 500, 2).unwrap();
        let model = fit_low_degree(&s, 0b1111, 0, DEFAULT_FEATURE_CAP).unwrap();
        let mean = s.examples().iter().map(|e| e.1).sum::<f64>() / 500.0;
        assert!((model.polynomial.coefficient(0) - mean).abs() < 1e-12);
    }

    #[test]
    fn caps_and_underdetermined() {
        let f = CubeFunction::constant(6, 1.0).unwrap();
        let s = draw_samples(&f, 10, 2).unwrap();
        assert!(matches!(fit_low_degree(&s, 0b111111, 2, 5), Err(Error::FeatureCapExceeded { .. })));
        assert!(matches!(fit_low_degree(&s, 0b111111, 2, 4096), Err(Error::Underdetermined { .. })));
    }

    #[test]
    fn duplicate_points_fall_back_to_ridge() {
        let f = CubeFunction::coordinate(3, 0).unwrap();
        let s = SampleSet::new(3, vec![(0, 0.0), (0, 0.0), (1, 1.0), (1, 1.0)], 0).unwrap();
        let model = fit_low_degree(&s, 0b011, 1, DEFAULT_FEATURE_CAP).unwrap();
        assert_eq!(model.diagnostics.solver, SolverPath::Ridge);
        assert!(model.diagnostics.ridge_lambda.unwrap() > 0.0);
        assert!(evaluate_error_empirical(&model, &s).unwrap() < 1e-6);
        assert!(evaluate_error(&model, &f).unwrap() < 1.0);
    }

    #[test]
    fn feature_enumeration() {
        assert_eq!(subsets_up_to(3, 1), vec![0, 1, 2, 4]);
        assert_eq!(subsets_up_to(4, 2).len() as u64, feature_count(4, 2));
        assert_eq!(subsets_up_to(16, 4).len() as u64, feature_count(16, 4));
        assert_eq!(feature_count(16, 4), 2517);
    }

    #[test]
    fn histogram_and_direct_gram_agree() {
        let f = CubeFunction::from_fn(7, |x| ((x * 13) % 7) as f64 / 7.0).unwrap();
        let s = draw_samples(&f, 300, 4).unwrap();
        let coords = 0b1011011;
        let feats = subsets_up_to(5, 2);
        let (hist, rhs_h) = gram_from_histogram(&s, coords, 5, &feats);
        let (direct, rhs_d) = gram_direct(&s, coords, &feats);
        for &a in &feats {
            for &b in &feats {
                assert_eq!(hist(a ^ b), direct(a ^ b));
            }
        }
        for (h, d) in rhs_h.iter().zip(&rhs_d) {
            assert!((h - d).abs() < 1e-9);
        }
    }
}
