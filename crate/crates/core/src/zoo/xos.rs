use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hypercube::CubeFunction;
use crate::limits::check_dimension;
use crate::numeric::{bits, pairwise_sum_by, popcount};
use crate::{Error, Result};

/// A maximum of nonnegative linear functions, `f(x) = max_c sum_i w_ci x_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XosRep {
    n: usize,
    clauses: Vec<Vec<f64>>,
}

impl XosRep {
    pub fn new(n: usize, clauses: Vec<Vec<f64>>) -> Result<Self> {
        check_dimension(n)?;
        if clauses.is_empty() {
            return Err(Error::InvalidParameter("an XOS representation needs at least one clause".into()));
        }
        for (c, clause) in clauses.iter().enumerate() {
            if clause.len() != n {
                return Err(Error::LengthMismatch { n, expected: n, got: clause.len() });
            }
            if let Some(&w) = clause.iter().find(|w| !w.is_finite() || **w < 0.0) {
                return Err(Error::InvalidParameter(format!("clause {c} has weight {w}; weights must be finite and nonnegative")));
            }
        }
        Ok(XosRep { n, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Vec<f64>] {
        &self.clauses
    }

    fn clause_value(clause: &[f64], x: usize) -> f64 {
        let idx = bits(x);
        pairwise_sum_by(idx.len(), |k| clause[idx[k]])
    }

    /// Index of the clause attaining the maximum at `x` (lowest index on ties).
    pub fn best_clause(&self, x: usize) -> usize {
        let mut best = 0;
        let mut best_value = f64::NEG_INFINITY;
        for (c, clause) in self.clauses.iter().enumerate() {
            let v = Self::clause_value(clause, x);
            if v > best_value {
                best = c;
                best_value = v;
            }
        }
        best
    }

    pub fn eval(&self, x: usize) -> f64 {
        self.clauses
            .iter()
            .map(|c| Self::clause_value(c, x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn to_table(&self) -> Result<CubeFunction> {
        CubeFunction::from_fn(self.n, |x| self.eval(x))
    }

    /// Rescales all weights by `factor >= 0`.
    pub fn scaled(&self, factor: f64) -> Result<XosRep> {
        let clauses = self
            .clauses
            .iter()
            .map(|c| c.iter().map(|w| w * factor).collect())
            .collect();
        XosRep::new(self.n, clauses)
    }

    /// Rescales so that the maximum value (attained at the all-ones point) is 1;
    /// an all-zero representation is returned unchanged.
    pub fn normalized(&self) -> Result<XosRep> {
        let top = self.eval((1usize << self.n) - 1);
        if top > 0.0 {
            self.scaled(1.0 / top)
        } else {
            Ok(self.clone())
        }
    }
}

/// A monotone DNF over `k` variables; each term is a nonempty coordinate mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mdnf {
    k: usize,
    terms: Vec<usize>,
}

impl Mdnf {
    pub fn new(k: usize, terms: Vec<usize>) -> Result<Self> {
        check_dimension(k)?;
        if terms.is_empty() {
            return Err(Error::InvalidParameter("a monotone DNF needs at least one term".into()));
        }
        for &t in &terms {
            if t == 0 || t >> k != 0 {
                return Err(Error::InvalidParameter(format!(
                    "term {t:#b} must be a nonempty subset of {k} variables"
                )));
            }
        }
        Ok(Mdnf { k, terms })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    pub fn max_term_size(&self) -> usize {
        self.terms.iter().map(|&t| popcount(t)).max().unwrap_or(0)
    }

    pub fn eval(&self, x: usize) -> bool {
        self.terms.iter().any(|&t| x & t == t)
    }

    pub fn to_table(&self) -> Result<CubeFunction> {
        CubeFunction::from_fn(self.k, |x| if self.eval(x) { 1.0 } else { 0.0 })
    }
}

/// XOS function equal to `1 - (1 - h(x)) / t` off the origin, where `t` is the
/// largest term size.
pub fn mdnf_to_xos(h: &Mdnf) -> Result<XosRep> {
    let k = h.k();
    let t = h.max_term_size() as f64;
    let mut clauses = Vec::with_capacity(h.terms().len() + k);
    for &term in h.terms() {
        let size = popcount(term) as f64;
        clauses.push((0..k).map(|i| if term >> i & 1 == 1 { 1.0 / size } else { 0.0 }).collect());
    }
    for i in 0..k {
        let mut clause = vec![0.0; k];
        clause[i] = (t - 1.0) / t;
        clauses.push(clause);
    }
    XosRep::new(k, clauses)
}

/// Random `ceil(sqrt k)`-DNF with `2^ceil(sqrt k)` terms, each a uniform
/// subset drawn independently (duplicates kept).
pub fn random_talagrand_mdnf(k: usize, seed: u64) -> Result<Mdnf> {
    check_dimension(k)?;
    let mut t = 1;
    while t * t < k {
        t += 1;
    }
    if t >= usize::BITS as usize {
        return Err(Error::InvalidParameter(format!("term count 2^{t} is too large")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = (0..1usize << t)
        .map(|_| sample(&mut rng, k, t).iter().fold(0, |m, i| m | 1 << i))
        .collect();
    Mdnf::new(k, terms)
}
