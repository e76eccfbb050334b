use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::*;
use super::corpus::{random_tables, submodular_corpus, xos_corpus};
use super::report::{BoundId, BoundReport};
use crate::hypercube::CubeFunction;
use crate::Result;

const KEPT_FAILURES: usize = 50;
const IMPORTANT_THRESHOLDS: [f64; 5] = [0.02, 0.05, 0.1, 0.2, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Identities and unconditional bounds on random tables.
    Core,
    /// Class-conditional bounds on random XOS functions.
    Xos,
    /// Class-conditional bounds on random submodular functions.
    Submodular,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub count: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_clauses: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite, count: usize, seed: u64) -> Self {
        let max_n = match suite {
            Suite::Core | Suite::Xos => 10,
            Suite::Submodular => 8,
        };
        SuiteConfig { suite, count, seed, max_n, max_clauses: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub bound: BoundId,
    pub evaluated: usize,
    pub failures: usize,
    /// Smallest relative slack seen, and the corpus member it came from.
    pub worst: Option<BoundReport>,
    pub worst_member: Option<usize>,
    pub max_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub member: usize,
    pub report: BoundReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckSummary>,
    pub failure_count: usize,
    /// The first failures in corpus order.
    pub failures: Vec<FailureRecord>,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn check(&self, bound: BoundId) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.bound == bound)
    }
}

fn core_member(f: &CubeFunction) -> Result<Vec<BoundReport>> {
    let s = f.transform();
    let mut out = vec![
        check_parseval(f, &s),
        check_derivative_spectrum(f, &s)?,
        check_second_derivative_norm(f, &s)?,
        check_definition_sum(f, &s)?,
    ];
    out.extend(check_degree2_tail_all(f, &s)?);
    for i in 0..f.n() {
        out.push(check_2_vs_t(&f.derivative(i)?)?);
    }
    Ok(out)
}

fn xos_member(f: &CubeFunction) -> Result<Vec<BoundReport>> {
    let s = f.transform();
    let mut out = vec![
        check_xos_pointwise(f),
        check_xos_global(f),
        check_self_bound_ineq(f),
        check_xos_influence(f)?,
    ];
    out.extend(check_xos_tail_all(&s));
    Ok(out)
}

fn submodular_member(f: &CubeFunction) -> Result<Vec<BoundReport>> {
    let s = f.transform();
    let mut out = vec![check_submodularity(f), check_sqrt_bound_all(f)?];
    out.extend(check_upper_bound_sum(&s));
    for &alpha in &IMPORTANT_THRESHOLDS {
        for &beta in &IMPORTANT_THRESHOLDS {
            out.push(check_important_variables(&s, alpha, beta)?);
        }
    }
    out.extend(check_degree2_tail_all(f, &s)?);
    for i in 0..f.n() {
        out.push(check_2_vs_t(&f.derivative(i)?)?);
    }
    Ok(out)
}

/// Runs every bound of the suite on a seeded corpus and aggregates per bound.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let functions: Vec<CubeFunction> = match config.suite {
        Suite::Core => random_tables(config.count, config.max_n, config.seed)?,
        Suite::Xos => xos_corpus(config.count, config.max_n, config.max_clauses, config.seed)?
            .iter()
            .map(|rep| rep.to_table())
            .collect::<Result<_>>()?,
        Suite::Submodular => submodular_corpus(config.count, config.max_n, config.seed)?
            .into_iter()
            .map(|m| m.function)
            .collect(),
    };
    let per_member: Vec<Vec<BoundReport>> = functions
        .par_iter()
        .map(|f| match config.suite {
            Suite::Core => core_member(f),
            Suite::Xos => xos_member(f),
            Suite::Submodular => submodular_member(f),
        })
        .collect::<Result<_>>()?;

    let mut checks: Vec<CheckSummary> = Vec::new();
    let mut failures = Vec::new();
    let mut failure_count = 0;
    for (member, reports) in per_member.into_iter().enumerate() {
        for report in reports {
            let idx = match checks.iter().position(|c| c.bound == report.bound) {
                Some(idx) => idx,
                None => {
                    checks.push(CheckSummary {
                        bound: report.bound,
                        evaluated: 0,
                        failures: 0,
                        worst: None,
                        worst_member: None,
                        max_ratio: None,
                    });
                    checks.len() - 1
                }
            };
            let summary = &mut checks[idx];
            summary.evaluated += 1;
            if let Some(r) = report.ratio {
                summary.max_ratio = Some(summary.max_ratio.map_or(r, |m| m.max(r)));
            }
            if !report.pass {
                summary.failures += 1;
                failure_count += 1;
                if failures.len() < KEPT_FAILURES {
                    failures.push(FailureRecord { member, report: report.clone() });
                }
            }
            if summary.worst.as_ref().is_none_or(|w| report.relative_slack() < w.relative_slack()) {
                summary.worst = Some(report);
                summary.worst_member = Some(member);
            }
        }
    }
    let mut warnings = Vec::new();
    if config.count == 0 {
        warnings.push("empty corpus: every check passes vacuously".to_string());
    }
    Ok(SuiteReport { config: config.clone(), checks, failure_count, failures, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Core, Suite::Xos, Suite::Submodular] {
            let mut config = SuiteConfig::new(suite, 10, 1);
            config.max_n = 6;
            let report = run_suite(&config).unwrap();
            assert!(report.passed(), "{suite:?}: {:?}", report.failures);
            assert!(!report.checks.is_empty());
        }
    }

    #[test]
    fn empty_corpus_warns() {
        let report = run_suite(&SuiteConfig::new(Suite::Xos, 0, 1)).unwrap();
        assert!(report.passed());
        assert_eq!(report.warnings.len(), 1);
    }
}
