use serde::{Deserialize, Serialize};

use super::{walsh, Spectrum};
use crate::limits::check_dimension;
use crate::numeric::mean_by;
use crate::{Error, Result};

/// A real-valued function on `{0,1}^n` stored as a dense truth table.
///
/// Entry `m` of the table is `f(x)` where bit `i` of `m` is `x_{i+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct CubeFunction {
    n: usize,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    n: usize,
    values: Vec<f64>,
}

impl TryFrom<RawTable> for CubeFunction {
    type Error = Error;
    fn try_from(raw: RawTable) -> Result<Self> {
        CubeFunction::new(raw.n, raw.values)
    }
}

impl From<CubeFunction> for RawTable {
    fn from(f: CubeFunction) -> Self {
        RawTable { n: f.n, values: f.values }
    }
}

/// Expectation norms over the uniform distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    Infinity,
}

impl CubeFunction {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_dimension(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::LengthMismatch { n, expected, got: values.len() });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(CubeFunction { n, values })
    }

    /// Builds the table by evaluating `f` at every mask.
    pub fn from_fn<F: Fn(usize) -> f64>(n: usize, f: F) -> Result<Self> {
        check_dimension(n)?;
        let values = (0..1usize << n).map(f).collect();
        CubeFunction::new(n, values)
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        CubeFunction::from_fn(n, |_| c)
    }

    /// `f(x) = x_{i+1}`.
    pub fn coordinate(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::CoordinateOutOfRange { coord: i, n });
        }
        CubeFunction::from_fn(n, |m| ((m >> i) & 1) as f64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn value(&self, mask: usize) -> f64 {
        self.values[mask]
    }

    fn check_coord(&self, i: usize) -> Result<()> {
        if i >= self.n {
            Err(Error::CoordinateOutOfRange { coord: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Pointwise map; the closure receives `(mask, value)`.
    pub fn map<F: Fn(usize, f64) -> f64>(&self, f: F) -> Result<CubeFunction> {
        CubeFunction::new(
            self.n,
            self.values.iter().enumerate().map(|(m, &v)| f(m, v)).collect(),
        )
    }

    pub fn sub(&self, other: &CubeFunction) -> Result<CubeFunction> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        self.map(|m, v| v - other.values[m])
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean_violation().is_none()
    }

    pub(crate) fn boolean_violation(&self) -> Option<(usize, f64)> {
        self.values
            .iter()
            .enumerate()
            .find(|(_, &v)| v != 0.0 && v != 1.0)
            .map(|(i, &v)| (i, v))
    }

    pub fn ensure_boolean(&self) -> Result<()> {
        match self.boolean_violation() {
            Some((index, value)) => Err(Error::NotBoolean { index, value }),
            None => Ok(()),
        }
    }

    /// Fourier coefficients `f^(S) = 2^{-n} sum_x f(x) chi_S(x)` via the
    /// fast Walsh-Hadamard butterfly.
    pub fn transform(&self) -> Spectrum {
        let mut coeffs = self.values.clone();
        walsh::fwht(&mut coeffs);
        let scale = 1.0 / self.values.len() as f64;
        coeffs.iter_mut().for_each(|c| *c *= scale);
        Spectrum::from_parts(self.n, coeffs)
    }

    /// `d_i f(x) = f(x_{i<-1}) - f(x_{i<-0})`. The result is constant in bit `i`.
    pub fn derivative(&self, i: usize) -> Result<CubeFunction> {
        self.check_coord(i)?;
        let bit = 1usize << i;
        let values = (0..self.len())
            .map(|m| self.values[m | bit] - self.values[m & !bit])
            .collect();
        Ok(CubeFunction { n: self.n, values })
    }

    /// Mixed second difference `d_ij f`; the zero function when `i == j`.
    pub fn second_derivative(&self, i: usize, j: usize) -> Result<CubeFunction> {
        self.check_coord(i)?;
        self.check_coord(j)?;
        if i == j {
            return Ok(CubeFunction { n: self.n, values: vec![0.0; self.len()] });
        }
        let (bi, bj) = (1usize << i, 1usize << j);
        let values = (0..self.len())
            .map(|m| {
                let base = m & !(bi | bj);
                self.values[base | bi | bj] - self.values[base | bi] - self.values[base | bj]
                    + self.values[base]
            })
            .collect();
        Ok(CubeFunction { n: self.n, values })
    }

    /// `d_ij f` at a single point, without materializing a table.
    #[inline]
    pub fn second_derivative_at(&self, i: usize, j: usize, x: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (bi, bj) = (1usize << i, 1usize << j);
        let base = x & !(bi | bj);
        self.values[base | bi | bj] - self.values[base | bi] - self.values[base | bj]
            + self.values[base]
    }

    #[inline]
    pub fn derivative_at(&self, i: usize, x: usize) -> f64 {
        let bit = 1usize << i;
        self.values[x | bit] - self.values[x & !bit]
    }

    pub fn norm(&self, p: Norm) -> f64 {
        match p {
            Norm::L1 => mean_by(self.len(), |m| self.values[m].abs()),
            Norm::L2 => self.norm_squared().sqrt(),
            Norm::Infinity => self.values.iter().fold(0.0f64, |a, v| a.max(v.abs())),
        }
    }

    /// `E[f^2]`.
    pub fn norm_squared(&self) -> f64 {
        mean_by(self.len(), |m| self.values[m] * self.values[m])
    }

    pub fn mean(&self) -> f64 {
        mean_by(self.len(), |m| self.values[m])
    }

    /// `||f||_T = sup { a : Pr[|f| >= a] >= a^3 }`, computed exactly.
    ///
    /// `G(a) = Pr[|f| >= a]` is a step function that is constant on each
    /// interval `(v_{j-1}, v_j]` between consecutive distinct values of
    /// `|f|`. On that interval the largest admissible `a` is
    /// `min(v_j, G(v_j)^{1/3})`, provided it lies above `v_{j-1}`.
    pub fn threshold_norm(&self) -> f64 {
        let mut abs: Vec<f64> = self.values.iter().map(|v| v.abs()).collect();
        abs.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        let total = abs.len() as f64;
        let mut best = 0.0f64;
        let mut lower = 0.0f64;
        let mut start = 0;
        while start < abs.len() {
            let v = abs[start];
            let mut end = start;
            while end < abs.len() && abs[end] == v {
                end += 1;
            }
            // Pr[|f| >= v] counts this value and everything above it.
            let tail = (abs.len() - start) as f64 / total;
            let candidate = v.min(tail.cbrt());
            if start == 0 || candidate > lower {
                best = best.max(candidate);
            }
            lower = v;
            start = end;
        }
        best
    }

    /// `Inf^kappa_i(f) = E[|d_i f / 2|^kappa]`.
    pub fn influence(&self, i: usize, kappa: f64) -> Result<f64> {
        self.check_coord(i)?;
        if !(kappa >= 1.0) {
            return Err(Error::InvalidParameter(format!("influence exponent {kappa} < 1")));
        }
        Ok(mean_by(self.len(), |m| (0.5 * self.derivative_at(i, m)).abs().powf(kappa)))
    }

    /// `sum_i Inf^kappa_i(f)`.
    pub fn total_influence(&self, kappa: f64) -> Result<f64> {
        let per = (0..self.n)
            .map(|i| self.influence(i, kappa))
            .collect::<Result<Vec<_>>>()?;
        Ok(crate::numeric::pairwise_sum(&per))
    }

    /// `f_I(x) = E_y[f(x_I, y_{~I})]`, computed by averaging out each
    /// coordinate outside `coords`.
    pub fn project(&self, coords: usize) -> CubeFunction {
        let mut values = self.values.clone();
        for i in 0..self.n {
            if coords >> i & 1 == 1 {
                continue;
            }
            let bit = 1usize << i;
            for m in 0..values.len() {
                if m & bit == 0 {
                    let avg = 0.5 * (values[m] + values[m | bit]);
                    values[m] = avg;
                    values[m | bit] = avg;
                }
            }
        }
        CubeFunction { n: self.n, values }
    }

    /// Sum of `||d_ij f||_2^2` over all ordered pairs `(i, j)`, `i != j`,
    /// computed from the table.
    pub fn second_derivative_energy(&self) -> f64 {
        let mut per_pair = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    per_pair.push(mean_by(self.len(), |m| {
                        let d = self.second_derivative_at(i, j, m);
                        d * d
                    }));
                }
            }
        }
        crate::numeric::pairwise_sum(&per_pair)
    }

    /// `E[(f - g)^2]^{1/2}`.
    pub fn l2_distance(&self, other: &CubeFunction) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(mean_by(self.len(), |m| {
            let d = self.values[m] - other.values[m];
            d * d
        })
        .sqrt())
    }

    pub(crate) fn from_parts(n: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), 1usize << n);
        CubeFunction { n, values }
    }
}
