use serde::{Deserialize, Serialize};

use super::regression::{evaluate_error, feature_count, fit_low_degree, FitDiagnostics, LearnedModel, DEFAULT_FEATURE_CAP};
use super::samples::draw_samples;
use super::select::{select_junta, select_junta_degree1, JuntaSelection};
use crate::hypercube::CubeFunction;
use crate::numeric::popcount;
use crate::{Error, Result};

pub const DEFAULT_SAMPLE_CONSTANT: f64 = 4.0;
pub const DEFAULT_MAX_SAMPLES: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearnMode {
    /// Degree-1 and degree-2 thresholds, degree `ceil(eps^{-4/5} ln(1/eps))`.
    Submodular,
    /// Degree-1 threshold only, degree `ceil(sqrt(5) / (2 eps))`.
    Xos,
}

/// User-facing learner parameters; unset fields take the documented defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub eps: f64,
    pub seed: u64,
    pub s: Option<f64>,
    pub degree: Option<usize>,
    pub samples: Option<usize>,
    pub sample_constant: f64,
    pub max_samples: usize,
    pub feature_cap: usize,
    pub clip: bool,
}

impl LearnerConfig {
    pub fn new(eps: f64, seed: u64) -> Self {
        LearnerConfig {
            eps,
            seed,
            s: None,
            degree: None,
            samples: None,
            sample_constant: DEFAULT_SAMPLE_CONSTANT,
            max_samples: DEFAULT_MAX_SAMPLES,
            feature_cap: DEFAULT_FEATURE_CAP,
            clip: true,
        }
    }

    /// `ceil(4 ln(2/eps) / eps^2)`.
    pub fn default_s(eps: f64) -> f64 {
        (4.0 * (2.0 / eps).ln() / (eps * eps)).ceil()
    }

    pub fn default_degree(eps: f64, mode: LearnMode) -> usize {
        match mode {
            LearnMode::Submodular => (eps.powf(-0.8) * (1.0 / eps).ln()).ceil() as usize,
            LearnMode::Xos => (5f64.sqrt() / (2.0 * eps)).ceil() as usize,
        }
    }

    /// `ceil(C ln(n) s^4 / eps^4)`, saturating.
    pub fn sample_target(&self, n: usize, s: f64) -> f64 {
        (self.sample_constant * (n as f64).ln() * s.powi(4) / self.eps.powi(4)).ceil()
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::InvalidParameter(format!("accuracy {} must lie in (0, 1)", self.eps)));
        }
        if let Some(s) = self.s {
            if !(s >= 1.0) {
                return Err(Error::InvalidParameter(format!("junta-size parameter {s} must be at least 1")));
            }
        }
        if self.samples == Some(0) || self.max_samples == 0 {
            return Err(Error::InvalidParameter("sample count must be at least 1".into()));
        }
        if !(self.sample_constant > 0.0) {
            return Err(Error::InvalidParameter("sample constant must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnReport {
    pub mode: LearnMode,
    pub n: usize,
    pub eps: f64,
    pub seed: u64,
    pub s: f64,
    pub s_is_default: bool,
    pub sample_constant: f64,
    /// Uncapped sample count from the accuracy analysis.
    pub sample_target: f64,
    pub samples: usize,
    pub selection: JuntaSelection,
    pub junta_size: usize,
    /// `32 s^2 / eps^2`.
    pub junta_size_bound: f64,
    pub degree_requested: usize,
    pub degree_effective: usize,
    pub features: usize,
    pub fit: FitDiagnostics,
    pub exact_error: f64,
    pub exact_error_unclipped: f64,
    pub clip: bool,
    pub warnings: Vec<String>,
}

impl LearnReport {
    pub fn within_target(&self) -> bool {
        self.exact_error <= self.eps
    }
}

/// Samples `f`, selects a junta, fits a low-degree polynomial on it and
/// measures the exact error against the full table.
pub fn learn(f: &CubeFunction, config: &LearnerConfig, mode: LearnMode) -> Result<(LearnedModel, LearnReport)> {
    config.validate()?;
    let n = f.n();
    let eps = config.eps;
    let s_is_default = config.s.is_none();
    let s = config.s.unwrap_or_else(|| LearnerConfig::default_s(eps));
    let sample_target = config.sample_target(n, s);
    let samples_used = config.samples.unwrap_or_else(|| {
        let capped = sample_target.min(config.max_samples as f64);
        (capped as usize).max(1)
    });
    let mut warnings = Vec::new();
    if config.samples.is_none() && sample_target > config.max_samples as f64 {
        warnings.push(format!(
            "sample count capped at {} (accuracy analysis asks for {sample_target:.3e})",
            config.max_samples
        ));
    }

    let samples = draw_samples(f, samples_used, config.seed)?;
    let selection = match mode {
        LearnMode::Submodular => select_junta(&samples, eps, s)?,
        LearnMode::Xos => select_junta_degree1(&samples, eps, s)?,
    };
    warnings.extend(selection.warnings.iter().cloned());
    let junta_size = popcount(selection.coords);

    let degree_requested = config.degree.unwrap_or_else(|| LearnerConfig::default_degree(eps, mode));
    let limit = config.feature_cap.min(samples_used) as u64;
    let mut degree_effective = degree_requested.min(junta_size);
    while degree_effective > 0 && feature_count(junta_size, degree_effective) > limit {
        degree_effective -= 1;
    }
    if degree_effective < degree_requested.min(junta_size) {
        warnings.push(format!(
            "degree lowered from {} to {degree_effective} to keep the feature count within {limit}",
            degree_requested.min(junta_size)
        ));
    }

    let fitted = fit_low_degree(&samples, selection.coords, degree_effective, config.feature_cap)?;
    let exact_error_unclipped = evaluate_error(&fitted, f)?;
    let model = fitted.with_clip(config.clip);
    let exact_error = evaluate_error(&model, f)?;

    let report = LearnReport {
        mode,
        n,
        eps,
        seed: config.seed,
        s,
        s_is_default,
        sample_constant: config.sample_constant,
        sample_target,
        samples: samples_used,
        junta_size,
        junta_size_bound: 32.0 * s * s / (eps * eps),
        degree_requested,
        degree_effective,
        features: model.diagnostics.features,
        fit: model.diagnostics.clone(),
        exact_error,
        exact_error_unclipped,
        clip: config.clip,
        selection,
        warnings,
    };
    Ok((model, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        assert_eq!(LearnerConfig::default_s(0.2), 231.0);
        assert_eq!(LearnerConfig::default_degree(0.2, LearnMode::Submodular), 6);
        assert_eq!(LearnerConfig::default_degree(0.25, LearnMode::Xos), 5);
    }

    #[test]
    fn linear_target_is_exact() {
        let f = CubeFunction::coordinate(6, 0).unwrap();
        let mut config = LearnerConfig::new(0.1, 3);
        config.samples = Some(5000);
        let (_, report) = learn(&f, &config, LearnMode::Submodular).unwrap();
        assert!(report.exact_error <= 1e-8, "{}", report.exact_error);
    }

    #[test]
    fn invalid_config() {
        let f = CubeFunction::coordinate(2, 0).unwrap();
        assert!(learn(&f, &LearnerConfig::new(1.5, 0), LearnMode::Xos).is_err());
    }
}
