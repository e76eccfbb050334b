use serde::{Deserialize, Serialize};

use super::samples::{estimate_coefficients, SampleSet};
use crate::numeric::one_based;
use crate::{Error, Result};

/// Outcome of thresholding estimated low-degree coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JuntaSelection {
    pub coords: usize,
    pub degree1_threshold: f64,
    /// Absent when only degree-1 coefficients are used.
    pub degree2_threshold: Option<f64>,
    /// Accuracy the thresholds assume: `eps^2 / (32 s^2)`.
    pub accuracy_target: f64,
    /// Worst-case standard error of each estimate, `max |label| / sqrt(m)`.
    pub standard_error: f64,
    pub warnings: Vec<String>,
}

impl JuntaSelection {
    pub fn coords_one_based(&self) -> Vec<usize> {
        one_based(self.coords)
    }
}

fn check(eps: f64, s: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("accuracy {eps} must lie in (0, 1)")));
    }
    if !(s >= 1.0) {
        return Err(Error::InvalidParameter(format!("junta-size parameter {s} must be at least 1")));
    }
    Ok(())
}

pub fn degree1_threshold(eps: f64, s: f64) -> f64 {
    3.0 * eps / (16.0 * s.sqrt())
}

pub fn degree2_threshold(eps: f64, s: f64) -> f64 {
    3.0 * eps * eps / (32.0 * s * s)
}

fn select(samples: &SampleSet, eps: f64, s: f64, pairs: bool) -> Result<JuntaSelection> {
    check(eps, s)?;
    let n = samples.n();
    let t1 = degree1_threshold(eps, s);
    let t2 = degree2_threshold(eps, s);
    let singles: Vec<usize> = (0..n).map(|i| 1 << i).collect();
    let est1 = estimate_coefficients(samples, &singles)?;
    let mut coords = (0..n).filter(|&i| est1[i].abs() >= t1).fold(0usize, |m, i| m | 1 << i);
    if pairs {
        let pair_sets: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let masks: Vec<usize> = pair_sets.iter().map(|&(i, j)| 1 << i | 1 << j).collect();
        let est2 = estimate_coefficients(samples, &masks)?;
        for (&(i, j), e) in pair_sets.iter().zip(est2) {
            if e.abs() >= t2 {
                coords |= 1 << i | 1 << j;
            }
        }
    }
    let accuracy_target = eps * eps / (32.0 * s * s);
    let standard_error = samples.max_abs_label() / (samples.len() as f64).sqrt();
    let mut warnings = Vec::new();
    if standard_error > accuracy_target {
        warnings.push(format!(
            "{} samples give standard error {standard_error:.3e}, above the accuracy target {accuracy_target:.3e}",
            samples.len()
        ));
    }
    Ok(JuntaSelection {
        coords,
        degree1_threshold: t1,
        degree2_threshold: pairs.then_some(t2),
        accuracy_target,
        standard_error,
        warnings,
    })
}

/// Coordinates with `|f~({i})| >= 3 eps / (16 sqrt s)` or some
/// `|f~({i,j})| >= 3 eps^2 / (32 s^2)`.
pub fn select_junta(samples: &SampleSet, eps: f64, s: f64) -> Result<JuntaSelection> {
    select(samples, eps, s, true)
}

/// The degree-1 half of [`select_junta`].
pub fn select_junta_degree1(samples: &SampleSet, eps: f64, s: f64) -> Result<JuntaSelection> {
    select(samples, eps, s, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::CubeFunction;
    use crate::learner::{draw_samples, SampleSet};

    #[test]
    fn threshold_arithmetic() {
        assert!((degree1_threshold(0.2, 10.0) - 0.011858541225631423).abs() < 1e-15);
        assert!((degree2_threshold(0.2, 10.0) - 3.75e-5).abs() < 1e-18);
    }

    #[test]
    fn dictator_and_constant() {
        let f = CubeFunction::coordinate(6, 0).unwrap();
        let s = draw_samples(&f, 20_000, 3).unwrap();
        assert_eq!(select_junta(&s, 0.5, 1.0).unwrap().coords, 0b1);
        let c = CubeFunction::constant(6, 0.4).unwrap();
        let sel = select_junta(&SampleSet::exhaustive(&c), 0.2, 10.0).unwrap();
        assert_eq!(sel.coords, 0);
        let sparse = select_junta(&draw_samples(&c, 1000, 3).unwrap(), 0.2, 10.0).unwrap();
        assert!(!sparse.warnings.is_empty());
    }
}
