use serde::{Deserialize, Serialize};

use super::{walsh, CubeFunction, SparsePolynomial};
use crate::limits::check_dimension;
use crate::numeric::{pairwise_sum_by, popcount};
use crate::{Error, Result};

/// Dense Fourier coefficient table; entry `S` is `f^(S)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    n: usize,
    coeffs: Vec<f64>,
}

impl Spectrum {
    pub fn new(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dimension(n)?;
        let expected = 1usize << n;
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch { n, expected, got: coeffs.len() });
        }
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Spectrum { n, coeffs })
    }

    pub(crate) fn from_parts(n: usize, coeffs: Vec<f64>) -> Self {
        Spectrum { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, set: usize) -> f64 {
        self.coeffs[set]
    }

    /// `f(x) = sum_S f^(S) chi_S(x)`.
    pub fn inverse_transform(&self) -> CubeFunction {
        let mut values = self.coeffs.clone();
        walsh::fwht(&mut values);
        CubeFunction::from_parts(self.n, values)
    }

    fn check_level(&self, d: usize) -> Result<()> {
        if d > self.n {
            Err(Error::LevelOutOfRange { level: d, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Sum of squared coefficients selected by `keep`.
    pub fn weight_where<F: Fn(usize) -> bool>(&self, keep: F) -> f64 {
        pairwise_sum_by(self.coeffs.len(), |s| {
            if keep(s) {
                self.coeffs[s] * self.coeffs[s]
            } else {
                0.0
            }
        })
    }

    /// `W^d(f) = sum_{|S| = d} f^(S)^2`.
    pub fn level_weight(&self, d: usize) -> Result<f64> {
        self.check_level(d)?;
        Ok(self.weight_where(|s| popcount(s) == d))
    }

    /// `W^{>d}(f) = sum_{|S| > d} f^(S)^2`.
    pub fn tail_weight(&self, d: usize) -> Result<f64> {
        self.check_level(d)?;
        Ok(self.weight_where(|s| popcount(s) > d))
    }

    /// All level weights `W^0, ..., W^n`.
    pub fn level_weights(&self) -> Vec<f64> {
        (0..=self.n).map(|d| self.weight_where(|s| popcount(s) == d)).collect()
    }

    /// All tails `W^{>0}, ..., W^{>n}`.
    pub fn tail_weights(&self) -> Vec<f64> {
        (0..=self.n).map(|d| self.weight_where(|s| popcount(s) > d)).collect()
    }

    /// `sum_S f^(S)^2`.
    pub fn total_weight(&self) -> f64 {
        self.weight_where(|_| true)
    }

    /// `sum_{S : |S \ L| > k} f^(S)^2`.
    pub fn structured_tail(&self, coords: usize, k: usize) -> Result<f64> {
        self.check_level(k)?;
        Ok(self.weight_where(|s| popcount(s & !coords) > k))
    }

    /// Smallest `d` with `W^{>d}(f) <= eps^2`.
    pub fn l2_degree(&self, eps: f64) -> Result<usize> {
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter(format!("accuracy {eps} must be positive")));
        }
        let target = eps * eps;
        let tails = self.tail_weights();
        Ok(tails.iter().position(|&t| t <= target).unwrap_or(self.n))
    }

    /// `Inf^2_i(f) = sum_{S containing i} f^(S)^2`.
    pub fn influence2(&self, i: usize) -> Result<f64> {
        if i >= self.n {
            return Err(Error::CoordinateOutOfRange { coord: i, n: self.n });
        }
        Ok(self.weight_where(|s| s >> i & 1 == 1))
    }

    /// Spectrum of the projection `f_I`: coefficients outside `2^I` zeroed.
    pub fn project(&self, coords: usize) -> Spectrum {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(s, &c)| if s & !coords == 0 { c } else { 0.0 })
            .collect();
        Spectrum { n: self.n, coeffs }
    }

    /// Keeps the terms with `|S| <= d`, or `|S \ I| <= d` when `coords` is given.
    pub fn truncate(&self, d: usize, coords: Option<usize>) -> Result<SparsePolynomial> {
        self.check_level(d)?;
        let outside = !coords.unwrap_or(0);
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(s, &c)| c != 0.0 && popcount(s & outside) <= d)
            .map(|(s, &c)| (s, c));
        SparsePolynomial::from_terms(self.n, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn or2() -> CubeFunction {
        CubeFunction::new(2, vec![0.0, 1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn transform_examples() {
        let s = CubeFunction::constant(3, 2.5).unwrap().transform();
        assert_eq!(s.coeff(0), 2.5);
        assert!(s.coeffs()[1..].iter().all(|&c| c == 0.0));

        // Brute-force four-point sums for OR.
        let s = or2().transform();
        assert_eq!(s.coeffs(), &[0.75, -0.25, -0.25, -0.25]);

        let x1 = CubeFunction::coordinate(1, 0).unwrap().transform();
        assert_eq!(x1.coeffs(), &[0.5, -0.5]);
    }

    #[test]
    fn inverse_examples() {
        let s = Spectrum::new(1, vec![0.5, -0.5]).unwrap();
        assert_eq!(s.inverse_transform().values(), &[0.0, 1.0]);
        let z = Spectrum::new(3, vec![0.0; 8]).unwrap();
        assert!(z.inverse_transform().values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn weight_examples() {
        let s = or2().transform();
        assert_eq!(s.level_weight(0).unwrap(), 9.0 / 16.0);
        assert_eq!(s.level_weight(1).unwrap(), 2.0 / 16.0);
        assert_eq!(s.level_weight(2).unwrap(), 1.0 / 16.0);
        assert_eq!(s.tail_weight(1).unwrap(), 1.0 / 16.0);
        assert_eq!(s.tail_weight(2).unwrap(), 0.0);
        assert!(s.tail_weight(3).is_err());
    }

    #[test]
    fn structured_tail_edges() {
        let s = or2().transform();
        for k in 0..=2 {
            assert_eq!(s.structured_tail(0b11, k).unwrap(), 0.0);
            assert_eq!(s.structured_tail(0, k).unwrap(), s.tail_weight(k).unwrap());
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(or2().transform().l2_degree(0.3).unwrap(), 1);
        let c = CubeFunction::constant(4, 0.7).unwrap().transform();
        assert_eq!(c.l2_degree(0.01).unwrap(), 0);
        assert!(c.l2_degree(0.0).is_err());
    }

    #[test]
    fn truncate_examples() {
        let f = or2();
        let s = f.transform();
        let p = s.truncate(1, None).unwrap();
        let approx = p.to_function().unwrap();
        let err = f.l2_distance(&approx).unwrap();
        assert!((err * err - 1.0 / 16.0).abs() < 1e-15);
        let p0 = s.truncate(0, None).unwrap();
        assert_eq!(p0.terms().len(), 1);
        assert_eq!(p0.coefficient(0), 0.75);
        let full = s.truncate(2, None).unwrap().to_function().unwrap();
        assert_eq!(full, f);
    }
}
