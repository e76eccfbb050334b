use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CubeFunction;
use crate::limits::check_dimension;
use crate::numeric::{character, pairwise_sum_by, popcount};
use crate::{Error, Result};

/// A multilinear polynomial in the parity basis: `p(x) = sum_S c_S chi_S(x)`.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<usize, f64>,
}

impl SparsePolynomial {
    pub fn zero(n: usize) -> Result<Self> {
        check_dimension(n)?;
        Ok(SparsePolynomial { n, terms: BTreeMap::new() })
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, f64)>>(n: usize, terms: I) -> Result<Self> {
        let mut p = SparsePolynomial::zero(n)?;
        for (set, c) in terms {
            p.add_term(set, c)?;
        }
        Ok(p)
    }

    /// Adds `c` to the coefficient of `chi_set`, dropping the term if it cancels.
    pub fn add_term(&mut self, set: usize, c: f64) -> Result<()> {
        if set >> self.n != 0 {
            return Err(Error::InvalidParameter(format!(
                "monomial {set:#b} does not fit in dimension {}",
                self.n
            )));
        }
        if !c.is_finite() {
            return Err(Error::NonFinite { index: set, value: c });
        }
        let entry = self.terms.entry(set).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&set);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<usize, f64> {
        &self.terms
    }

    pub fn coefficient(&self, set: usize) -> f64 {
        self.terms.get(&set).copied().unwrap_or(0.0)
    }

    /// Largest `|S|` among stored terms; 0 for the empty polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|&s| popcount(s)).max().unwrap_or(0)
    }

    /// Union of the coordinates appearing in any term.
    pub fn support(&self) -> usize {
        self.terms.keys().fold(0, |acc, &s| acc | s)
    }

    pub fn eval(&self, x: usize) -> f64 {
        let terms: Vec<(&usize, &f64)> = self.terms.iter().collect();
        pairwise_sum_by(terms.len(), |k| terms[k].1 * character(*terms[k].0, x))
    }

    /// Evaluation clamped to `[0, 1]`.
    pub fn eval_clamped(&self, x: usize) -> f64 {
        self.eval(x).clamp(0.0, 1.0)
    }

    /// Materializes the full truth table.
    pub fn to_function(&self) -> Result<CubeFunction> {
        let mut coeffs = vec![0.0; 1usize << self.n];
        for (&s, &c) in &self.terms {
            coeffs[s] = c;
        }
        Ok(super::Spectrum::new(self.n, coeffs)?.inverse_transform())
    }
}
