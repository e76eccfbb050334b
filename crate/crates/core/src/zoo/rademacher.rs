use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::XosRep;
use crate::hypercube::CubeFunction;
use crate::limits::{check_cap, check_dimension};
use crate::numeric::{bits, pairwise_sum};
use crate::{Error, Result};

pub const RADEMACHER_MAX_DIM: usize = 16;
const VECTORS_FROM_XOS_MAX_DIM: usize = 10;

/// A finite, nonempty set of real vectors in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorSet {
    n: usize,
    vectors: Vec<Vec<f64>>,
}

impl VectorSet {
    pub fn new(n: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        check_dimension(n)?;
        if vectors.is_empty() {
            return Err(Error::InvalidParameter("a vector set needs at least one vector".into()));
        }
        for v in &vectors {
            if v.len() != n {
                return Err(Error::LengthMismatch { n, expected: n, got: v.len() });
            }
            if let Some(&bad) = v.iter().find(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter(format!("vector entry {bad} is not finite")));
            }
        }
        Ok(VectorSet { n, vectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }
}

fn complexity_on(set: &VectorSet, a: usize) -> f64 {
    let coords = bits(a);
    let vs = &set.vectors;
    // Start from all signs +1 and walk a Gray code, flipping one sign per step.
    let mut sums: Vec<f64> = vs.iter().map(|v| coords.iter().map(|&i| v[i]).sum()).collect();
    let mut signs = vec![1.0f64; coords.len()];
    let steps = 1usize << coords.len();
    let mut maxima = Vec::with_capacity(steps);
    maxima.push(sums.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    for s in 1..steps {
        let p = s.trailing_zeros() as usize;
        let i = coords[p];
        let delta = -2.0 * signs[p];
        signs[p] = -signs[p];
        for (sum, v) in sums.iter_mut().zip(vs) {
            *sum += delta * v[i];
        }
        maxima.push(sums.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    }
    pairwise_sum(&maxima) / steps as f64
}

/// `f(A) = (1/n) E_sigma[max_v sum_{i in A} sigma_i v_i]`, by exact enumeration.
pub fn rademacher_function(set: &VectorSet) -> Result<CubeFunction> {
    let n = set.n();
    check_cap(n, RADEMACHER_MAX_DIM)?;
    let values: Vec<f64> = (0..1usize << n)
        .into_par_iter()
        .map(|a| if a == 0 { 0.0 } else { complexity_on(set, a) / n as f64 })
        .collect();
    CubeFunction::new(n, values)
}

/// The vectors `n (w_c1 s_1, ..., w_cn s_n)` over clauses `c` and sign patterns
/// `s`, so that [`rademacher_function`] reproduces `rep` exactly.
pub fn vectors_from_xos(rep: &XosRep) -> Result<VectorSet> {
    let n = rep.n();
    check_cap(n, VECTORS_FROM_XOS_MAX_DIM)?;
    let scale = n as f64;
    let mut vectors = Vec::with_capacity(rep.clauses().len() << n);
    for clause in rep.clauses() {
        for signs in 0..1usize << n {
            vectors.push(
                (0..n)
                    .map(|i| if signs >> i & 1 == 1 { -scale * clause[i] } else { scale * clause[i] })
                    .collect(),
            );
        }
    }
    VectorSet::new(n, vectors)
}
