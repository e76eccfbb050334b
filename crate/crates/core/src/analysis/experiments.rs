use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{large_derivative_census, threshold_census};
use super::noise::noise_sensitivity_from_spectrum;
use crate::hypercube::CubeFunction;
use crate::numeric::{derive_seed, one_based, pairwise_sum, popcount};
use crate::zoo::{hockey_stick, random_talagrand_mdnf};
use crate::{Error, Result};

/// Level `d` at which the hockey-stick tail is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeRule {
    HalfK,
    Fixed(usize),
}

impl DegreeRule {
    pub fn degree(self, k: usize) -> usize {
        match self {
            DegreeRule::HalfK => k / 2,
            DegreeRule::Fixed(d) => d.min(k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HockeyTailRow {
    pub k: usize,
    pub d: usize,
    pub tail: f64,
    /// `tail * k * d^{3/2}`.
    pub scaled: f64,
}

/// Exact `W^{>d}(hs_k)` on `k` variables for each `k`.
pub fn hockey_tail_experiment(ks: &[usize], rule: DegreeRule) -> Result<Vec<HockeyTailRow>> {
    ks.iter()
        .map(|&k| {
            let d = rule.degree(k);
            let tail = hockey_stick(k, k)?.transform().tail_weight(d)?;
            let scaled = tail * k as f64 * (d as f64).powf(1.5);
            Ok(HockeyTailRow { k, d, tail, scaled })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TalagrandRow {
    pub index: usize,
    pub seed: u64,
    /// Noise sensitivity of the 0/1-valued DNF.
    pub ns: f64,
    /// `floor(ns * sqrt(k) / 2)`.
    pub d: usize,
    /// `W^{>d}` of the 0/1-valued DNF.
    pub tail: f64,
    /// `W^{>d}` of the +-1 form `1 - 2h`, equal to `4 * tail`.
    pub tail_pm1: f64,
    /// `2 (ns - alpha d)`, a lower bound for `tail_pm1`.
    pub chain_rhs: f64,
    pub chain_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        Some(Stats {
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            mean: pairwise_sum(values) / values.len() as f64,
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TalagrandSummary {
    pub k: usize,
    pub seeds: usize,
    pub master_seed: u64,
    pub alpha: f64,
    pub term_count: usize,
    pub term_size: usize,
    pub sampling: String,
    pub ns: Option<Stats>,
    pub tail: Option<Stats>,
    pub chain_failures: usize,
}

/// Noise sensitivity and spectral tails of seeded random Talagrand DNFs. Trial
/// `i` uses seed `derive_seed(master_seed, i)`; `alpha` defaults to `1/sqrt(k)`.
pub fn talagrand_experiment(
    k: usize,
    seeds: usize,
    master_seed: u64,
    alpha: Option<f64>,
) -> Result<(Vec<TalagrandRow>, TalagrandSummary)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let root = (k as f64).sqrt();
    let alpha = alpha.unwrap_or(1.0 / root);
    let rows: Vec<TalagrandRow> = (0..seeds)
        .into_par_iter()
        .map(|index| {
            let seed = derive_seed(master_seed, index as u64);
            let h = random_talagrand_mdnf(k, seed)?;
            let s = h.to_table()?.transform();
            let ns = noise_sensitivity_from_spectrum(&s, alpha)?;
            let d = ((ns * root / 2.0).floor() as usize).min(k);
            let tail = s.tail_weight(d)?;
            let chain_rhs = 2.0 * (ns - alpha * d as f64);
            let tail_pm1 = 4.0 * tail;
            let chain_pass = tail_pm1 >= chain_rhs - 1e-9 * chain_rhs.abs().max(1.0);
            Ok(TalagrandRow { index, seed, ns, d, tail, tail_pm1, chain_rhs, chain_pass })
        })
        .collect::<Result<_>>()?;
    let probe = random_talagrand_mdnf(k, master_seed)?;
    let ns: Vec<f64> = rows.iter().map(|r| r.ns).collect();
    let tails: Vec<f64> = rows.iter().map(|r| r.tail).collect();
    let summary = TalagrandSummary {
        k,
        seeds,
        master_seed,
        alpha,
        term_count: probe.terms().len(),
        term_size: probe.max_term_size(),
        sampling: "uniform subsets drawn independently with replacement".into(),
        ns: Stats::of(&ns),
        tail: Stats::of(&tails),
        chain_failures: rows.iter().filter(|r| !r.chain_pass).count(),
    };
    Ok((rows, summary))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzRow {
    pub name: String,
    pub alpha: f64,
    /// Coordinates with `||d_i f||_T <= alpha`, 1-based.
    pub set: Vec<usize>,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
}

/// For each function and `alpha`, the ratio of `sum_{i != j in S} ||d_ij f||^2`
/// to `sqrt(alpha) log^{3/2}(1/alpha)` with `S = {i : ||d_i f||_T <= alpha}`.
pub fn lipschitz_sum_experiment(corpus: &[(String, CubeFunction)], alphas: &[f64]) -> Result<Vec<LipschitzRow>> {
    if let Some(&a) = alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
        return Err(Error::InvalidParameter(format!("alpha {a} must lie in (0, 1)")));
    }
    let per_function: Vec<Vec<LipschitzRow>> = corpus
        .par_iter()
        .map(|(name, f)| {
            let n = f.n();
            let tnorm: Vec<f64> = (0..n).map(|i| Ok(f.derivative(i)?.threshold_norm())).collect::<Result<_>>()?;
            let mut pair_energy = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let e = f.second_derivative(i, j)?.norm_squared();
                    pair_energy[i][j] = e;
                    pair_energy[j][i] = e;
                }
            }
            Ok(alphas
                .iter()
                .map(|&alpha| {
                    let set = (0..n).filter(|&i| tnorm[i] <= alpha).fold(0usize, |m, i| m | 1 << i);
                    let members: Vec<usize> = (0..n).filter(|i| set >> i & 1 == 1).collect();
                    let terms: Vec<f64> = members
                        .iter()
                        .flat_map(|&i| members.iter().map(move |&j| (i, j)))
                        .map(|(i, j)| pair_energy[i][j])
                        .collect();
                    let numerator = pairwise_sum(&terms);
                    let denominator = alpha.sqrt() * (1.0 / alpha).ln().powf(1.5);
                    LipschitzRow { name: name.clone(), alpha, set: one_based(set), numerator, denominator, ratio: numerator / denominator }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_function.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub name: String,
    pub eps: f64,
    pub delta: f64,
    /// `{i : Pr[|d_i f| >= eps] >= delta}`, 1-based.
    pub large_derivatives: Vec<usize>,
    /// `{i : ||d_i f||_T >= eps}`, 1-based.
    pub threshold: Vec<usize>,
    /// `|threshold| * eps / ln(1/eps)`.
    pub statistic: f64,
}

/// Both coordinate censuses for each `eps`, with `delta` defaulting to `eps^3`.
pub fn census_experiment(corpus: &[(String, CubeFunction)], eps: &[f64], delta: Option<f64>) -> Result<Vec<CensusRow>> {
    if let Some(&e) = eps.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        return Err(Error::InvalidParameter(format!("eps {e} must lie in (0, 1)")));
    }
    let mut rows = Vec::new();
    for (name, f) in corpus {
        for &e in eps {
            let delta = delta.unwrap_or(e * e * e);
            let j = large_derivative_census(f, e, delta)?;
            let t = threshold_census(f, e)?;
            rows.push(CensusRow {
                name: name.clone(),
                eps: e,
                delta,
                large_derivatives: one_based(j),
                threshold: one_based(t),
                statistic: popcount(t) as f64 * e / (1.0 / e).ln(),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hockey_tail_k2() {
        let rows = hockey_tail_experiment(&[2], DegreeRule::HalfK).unwrap();
        assert_eq!(rows[0].d, 1);
        assert_eq!(rows[0].tail, 1.0 / 16.0);
        assert_eq!(rows[0].scaled, 1.0 / 8.0);
    }

    #[test]
    fn talagrand_small() {
        let (rows, summary) = talagrand_experiment(4, 100, 0, None).unwrap();
        assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r.ns)));
        assert!(rows.iter().all(|r| r.chain_pass));
        assert_eq!(summary.term_count, 4);
        assert_eq!(summary.term_size, 2);
        let again = talagrand_experiment(4, 100, 0, None).unwrap();
        assert_eq!(rows, again.0);
    }

    #[test]
    fn lipschitz_examples() {
        let lin = CubeFunction::from_fn(4, |x| popcount(x) as f64 / 4.0).unwrap();
        let hs = hockey_stick(16, 16).unwrap();
        let corpus = vec![("linear".to_string(), lin), ("hs16".to_string(), hs)];
        let rows = lipschitz_sum_experiment(&corpus, &[0.1, 0.5]).unwrap();
        assert!(rows[..2].iter().all(|r| r.numerator == 0.0));
        let hs_half = &rows[3];
        assert_eq!(hs_half.set.len(), 16);
        assert!(hs_half.ratio.is_finite() && hs_half.ratio > 0.0);
    }
}
