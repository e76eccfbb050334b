use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::hypercube::CubeFunction;
use crate::zoo::{
    boolean_to_submodular, hamming_self_bounding, hockey_stick, majority, mdnf_to_xos, rademacher_function,
    random_talagrand_mdnf, separation_example, Mdnf, VectorSet, XosRep,
};
use crate::{analysis, Error};

use super::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A function description. Coordinates inside `terms` are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    Table { n: usize, values: Vec<f64> },
    Xos { n: usize, clauses: Vec<Vec<f64>> },
    Mdnf { k: usize, terms: Vec<Vec<usize>> },
    MdnfXos { k: usize, terms: Vec<Vec<usize>> },
    HockeyStick { n: usize, k: usize },
    Majority { n: usize, k: usize },
    EmbedSubmodular { inner: Box<FunctionSpec> },
    HammingSb { r: usize, inner: Box<FunctionSpec> },
    Rademacher { n: usize, vectors: Vec<Vec<f64>> },
    SeparationExample,
    RandomXos { n: usize, clauses: usize, seed: u64 },
    RandomTalagrand { k: usize, seed: u64 },
}

/// Top-level spec file: a versioned [`FunctionSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecFile {
    pub schema_version: u32,
    #[serde(flatten)]
    pub function: FunctionSpec,
}

fn mdnf_from(k: usize, terms: &[Vec<usize>]) -> Result<Mdnf, Error> {
    let masks = terms
        .iter()
        .map(|t| {
            t.iter().try_fold(0usize, |m, &c| {
                if c == 0 || c > k {
                    Err(Error::CoordinateOutOfRange { coord: c, n: k })
                } else {
                    Ok(m | 1 << (c - 1))
                }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Mdnf::new(k, masks)
}

impl FunctionSpec {
    /// Seeds of every randomized component, outermost first.
    pub fn seeds(&self) -> Vec<u64> {
        match self {
            FunctionSpec::RandomXos { seed, .. } | FunctionSpec::RandomTalagrand { seed, .. } => vec![*seed],
            FunctionSpec::EmbedSubmodular { inner } | FunctionSpec::HammingSb { inner, .. } => inner.seeds(),
            _ => Vec::new(),
        }
    }

    /// The XOS representation, for kinds that have one.
    pub fn xos_rep(&self) -> Result<Option<XosRep>, Error> {
        Ok(match self {
            FunctionSpec::Xos { n, clauses } => Some(XosRep::new(*n, clauses.clone())?),
            FunctionSpec::MdnfXos { k, terms } => Some(mdnf_to_xos(&mdnf_from(*k, terms)?)?),
            FunctionSpec::RandomXos { n, clauses, seed } => Some(analysis::corpus::random_xos(*n, *clauses, *seed)?),
            _ => None,
        })
    }

    pub fn build(&self) -> Result<CubeFunction, Error> {
        if let Some(rep) = self.xos_rep()? {
            return rep.to_table();
        }
        match self {
            FunctionSpec::Table { n, values } => CubeFunction::new(*n, values.clone()),
            FunctionSpec::Mdnf { k, terms } => mdnf_from(*k, terms)?.to_table(),
            FunctionSpec::HockeyStick { n, k } => hockey_stick(*n, *k),
            FunctionSpec::Majority { n, k } => majority(*n, *k),
            FunctionSpec::EmbedSubmodular { inner } => boolean_to_submodular(&inner.build()?),
            FunctionSpec::HammingSb { r, inner } => hamming_self_bounding(&inner.build()?, *r),
            FunctionSpec::Rademacher { n, vectors } => rademacher_function(&VectorSet::new(*n, vectors.clone())?),
            FunctionSpec::SeparationExample => Ok(separation_example()),
            FunctionSpec::RandomTalagrand { k, seed } => random_talagrand_mdnf(*k, *seed)?.to_table(),
            FunctionSpec::Xos { .. } | FunctionSpec::MdnfXos { .. } | FunctionSpec::RandomXos { .. } => {
                unreachable!("handled above")
            }
        }
    }
}

pub fn parse_spec(text: &str) -> Result<SpecFile, CliError> {
    let spec: SpecFile = serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid spec: {e}")))?;
    if spec.schema_version != SCHEMA_VERSION {
        return Err(CliError::usage(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            spec.schema_version
        )));
    }
    Ok(spec)
}

pub fn read_spec(path: &Path) -> Result<(SpecFile, Vec<u8>), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::usage(format!("{} is not UTF-8: {e}", path.display())))?;
    let spec = parse_spec(text).map_err(|e| CliError { message: format!("{}: {}", path.display(), e.message), ..e })?;
    Ok((spec, bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let cases = [
            r#"{"schema_version":1,"kind":"table","n":2,"values":[0,1,1,1]}"#,
            r#"{"schema_version":1,"kind":"xos","n":2,"clauses":[[1,0],[0,1]]}"#,
            r#"{"schema_version":1,"kind":"mdnf","k":3,"terms":[[1,2],[3]]}"#,
            r#"{"schema_version":1,"kind":"mdnf_xos","k":3,"terms":[[1,2],[3]]}"#,
            r#"{"schema_version":1,"kind":"hockey_stick","n":4,"k":2}"#,
            r#"{"schema_version":1,"kind":"majority","n":3,"k":3}"#,
            r#"{"schema_version":1,"kind":"embed_submodular","inner":{"kind":"mdnf","k":2,"terms":[[1]]}}"#,
            r#"{"schema_version":1,"kind":"hamming_sb","r":3,"inner":{"kind":"majority","n":4,"k":4}}"#,
            r#"{"schema_version":1,"kind":"rademacher","n":2,"vectors":[[1,0],[0,1]]}"#,
            r#"{"schema_version":1,"kind":"separation_example"}"#,
            r#"{"schema_version":1,"kind":"random_xos","n":5,"clauses":3,"seed":7}"#,
            r#"{"schema_version":1,"kind":"random_talagrand","k":4,"seed":7}"#,
        ];
        for text in cases {
            let spec = parse_spec(text).unwrap();
            spec.function.build().unwrap_or_else(|e| panic!("{text}: {e}"));
        }
    }

    #[test]
    fn randomized_specs_need_seeds() {
        let err = parse_spec(r#"{"schema_version":1,"kind":"random_xos","n":5,"clauses":3}"#).unwrap_err();
        assert!(err.message.contains("seed"));
        assert!(parse_spec(r#"{"schema_version":2,"kind":"separation_example"}"#).is_err());
        assert!(parse_spec(r#"{"kind":"separation_example"}"#).is_err());
    }

    #[test]
    fn mdnf_terms_are_one_based() {
        let spec = parse_spec(r#"{"schema_version":1,"kind":"mdnf","k":2,"terms":[[2]]}"#).unwrap();
        assert_eq!(spec.function.build().unwrap().values(), &[0.0, 0.0, 1.0, 1.0]);
        let bad = parse_spec(r#"{"schema_version":1,"kind":"mdnf","k":2,"terms":[[0]]}"#).unwrap();
        assert!(bad.function.build().is_err());
    }
}
