use serde::{Deserialize, Serialize};

use crate::hypercube::CubeFunction;
use crate::numeric::{one_based, pairwise_sum, popcount};
use crate::{Error, Result};

/// Influence exponent used for XOS junta extraction.
pub const JUNTA_KAPPA: f64 = 4.0 / 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JuntaExtraction {
    /// Selected coordinates as a mask.
    pub coords: usize,
    /// Smallest level whose tail is at most `eps^2 / 2`.
    pub degree: usize,
    /// Influence threshold for membership.
    pub threshold: f64,
    pub total_influence: f64,
    /// Squared mass on sets outside the junta or above the degree.
    pub residual: f64,
    pub eps: f64,
}

impl JuntaExtraction {
    pub fn coords_one_based(&self) -> Vec<usize> {
        one_based(self.coords)
    }

    pub fn within_target(&self) -> bool {
        self.residual <= self.eps * self.eps
    }
}

/// Keeps the coordinates whose `Inf^{4/3}` reaches
/// `((1/3)^{d-1} eps^2 / (2 Inf^{4/3}(f)))^2`.
pub fn xos_junta_extract(f: &CubeFunction, eps: f64) -> Result<JuntaExtraction> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("accuracy {eps} must lie in (0, 1)")));
    }
    let s = f.transform();
    let tails = s.tail_weights();
    let half = eps * eps / 2.0;
    let degree = tails.iter().position(|&t| t <= half).unwrap_or(f.n());
    let per: Vec<f64> = (0..f.n()).map(|i| f.influence(i, JUNTA_KAPPA)).collect::<Result<_>>()?;
    let total = pairwise_sum(&per);
    let (coords, threshold) = if total > 0.0 {
        let base = (1.0 / 3.0f64).powi(degree as i32 - 1) * eps * eps / (2.0 * total);
        let threshold = base * base;
        let coords = per.iter().enumerate().filter(|(_, &v)| v >= threshold).fold(0, |m, (i, _)| m | 1 << i);
        (coords, threshold)
    } else {
        (0, f64::INFINITY)
    };
    let residual = s.weight_where(|set| set & !coords != 0 || popcount(set) > degree);
    Ok(JuntaExtraction { coords, degree, threshold, total_influence: total, residual, eps })
}
