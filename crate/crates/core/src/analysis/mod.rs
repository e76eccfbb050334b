//! Inequality verifiers, spectral experiments and the seeded corpora they run on.

mod bounds;
pub mod corpus;
mod experiments;
mod junta;
mod noise;
mod report;
mod suites;

pub use bounds::*;
pub use experiments::{
    census_experiment, hockey_tail_experiment, lipschitz_sum_experiment, talagrand_experiment, CensusRow,
    DegreeRule, HockeyTailRow, LipschitzRow, Stats, TalagrandRow, TalagrandSummary,
};
pub use junta::{xos_junta_extract, JuntaExtraction, JUNTA_KAPPA};
pub use noise::{noise_sensitivity_exact, noise_sensitivity_from_spectrum, noise_sensitivity_mc, NoiseEstimate, NoiseSpec};
pub use report::{worst, BoundId, BoundReport, Location, PASS_TOLERANCE};
pub use suites::{run_suite, CheckSummary, Suite, SuiteConfig, SuiteReport};
