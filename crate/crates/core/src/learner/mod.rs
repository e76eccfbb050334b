//! Learning from uniform random examples: coefficient estimation, junta
//! selection and least-squares regression over low-degree parities.

mod pipeline;
mod regression;
mod samples;
mod select;

pub use pipeline::{learn, LearnMode, LearnReport, LearnerConfig, DEFAULT_MAX_SAMPLES, DEFAULT_SAMPLE_CONSTANT};
pub use regression::{
    evaluate_error, evaluate_error_empirical, feature_count, fit_low_degree, FitDiagnostics, LearnedModel, SolverPath,
    DEFAULT_FEATURE_CAP,
};
pub use samples::{draw_samples, estimate_coefficients, SampleSet};
pub use select::{degree1_threshold, degree2_threshold, select_junta, select_junta_degree1, JuntaSelection};
