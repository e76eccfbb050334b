use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numeric::one_based;

/// Relative tolerance for declaring a bound satisfied.
pub const PASS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    /// `sum_S f^2 = E[f^2]`.
    Parseval,
    /// Spectrum of `d_i f` against the shifted coefficients of `f`.
    DerivativeSpectrum,
    /// `||d_ij f||^2 = 16 sum_{S >= {i,j}} f^2(S)`.
    SecondDerivativeNorm,
    /// Fast transform against the definition sum.
    DefinitionSum,
    /// `W^{>k} <= (1/16k^2) sum_ij ||d_ij f||^2`.
    Degree2Tail,
    /// `sum_{x_i = x_j = 1} (d_ij f(x))^2 <= 5 f(x)^2` for XOS `f`.
    XosPointwiseSquare,
    /// `sum_ij ||d_ij f||^2 <= 20 ||f||^2` for XOS `f`.
    XosGlobalSquare,
    /// `sum_{x_i = 1} d_i f(x) <= f(x)` for XOS `f`.
    SelfBound,
    /// `Inf^1(f) <= ||f||_1` for XOS `f`.
    XosInfluence,
    /// `W^{>k} <= 5/(4k^2)` for XOS `f` bounded by 1.
    XosTail,
    /// `sum_{j in A} ||d_ij f||_1 <= 2 sqrt|A| ||d_i f||_2` for submodular `f`.
    SqrtBound,
    /// `||h||_2 <= sqrt 2 ||h||_T` for `h` with range in `[-1, 1]`.
    TwoVsThreshold,
    /// `(1/2) sum_{S >= {i,j}} f^2(S) <= |f^({i,j})|` for submodular `f` into `[0,1]`.
    UpperBoundSum,
    /// Count of coordinates with a large degree-1 or degree-2 coefficient.
    ImportantVariables,
    /// Largest second derivative must be non-positive.
    Submodularity,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Parseval => "parseval",
            BoundId::DerivativeSpectrum => "derivative_spectrum",
            BoundId::SecondDerivativeNorm => "second_derivative_norm",
            BoundId::DefinitionSum => "definition_sum",
            BoundId::Degree2Tail => "degree2_tail",
            BoundId::XosPointwiseSquare => "xos_pointwise_square",
            BoundId::XosGlobalSquare => "xos_global_square",
            BoundId::SelfBound => "self_bound",
            BoundId::XosInfluence => "xos_influence",
            BoundId::XosTail => "xos_tail",
            BoundId::SqrtBound => "sqrt_bound",
            BoundId::TwoVsThreshold => "two_vs_threshold",
            BoundId::UpperBoundSum => "upper_bound_sum",
            BoundId::ImportantVariables => "important_variables",
            BoundId::Submodularity => "submodularity",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a bound was evaluated. Coordinates here are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Location {
    Point { ones: Vec<usize> },
    Level { level: usize },
    Coordinate { coord: usize },
    CoordinatePair { i: usize, j: usize },
    CoordinateAndSet { coord: usize, set: Vec<usize> },
    Thresholds { alpha: f64, beta: f64 },
}

impl Location {
    pub fn point(mask: usize) -> Self {
        Location::Point { ones: one_based(mask) }
    }

    pub fn coordinate(i: usize) -> Self {
        Location::Coordinate { coord: i + 1 }
    }

    pub fn pair(i: usize, j: usize) -> Self {
        Location::CoordinatePair { i: i + 1, j: j + 1 }
    }

    pub fn coordinate_and_set(i: usize, set: usize) -> Self {
        Location::CoordinateAndSet { coord: i + 1, set: one_based(set) }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            Location::Point { ones } => write!(f, "x={{{}}}", list(ones)),
            Location::Level { level } => write!(f, "k={level}"),
            Location::Coordinate { coord } => write!(f, "i={coord}"),
            Location::CoordinatePair { i, j } => write!(f, "i={i} j={j}"),
            Location::CoordinateAndSet { coord, set } => write!(f, "i={coord} A={{{}}}", list(set)),
            Location::Thresholds { alpha, beta } => write!(f, "alpha={alpha} beta={beta}"),
        }
    }
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound: BoundId,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub witness: Option<Location>,
    /// Bound-specific ratio, such as the worst `lhs / f(x)^2` for the pointwise bound.
    pub ratio: Option<f64>,
}

impl BoundReport {
    pub fn new(bound: BoundId, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        let pass = slack >= -PASS_TOLERANCE * rhs.abs().max(1.0);
        BoundReport { bound, lhs, rhs, slack, pass, witness: None, ratio: None }
    }

    pub fn at(mut self, witness: Location) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_ratio(mut self, ratio: f64) -> Self {
        self.ratio = Some(ratio);
        self
    }

    /// Slack relative to the pass tolerance scale; the worst report minimizes it.
    pub fn relative_slack(&self) -> f64 {
        self.slack / self.rhs.abs().max(1.0)
    }
}

/// The report with the smallest relative slack (first on ties), carrying the
/// largest ratio seen across all reports.
pub fn worst(reports: impl IntoIterator<Item = BoundReport>) -> Option<BoundReport> {
    let mut best: Option<BoundReport> = None;
    let mut max_ratio: Option<f64> = None;
    for r in reports {
        if let Some(q) = r.ratio {
            max_ratio = Some(max_ratio.map_or(q, |m| m.max(q)));
        }
        if best.as_ref().is_none_or(|b| r.relative_slack() < b.relative_slack()) {
            best = Some(r);
        }
    }
    best.map(|mut b| {
        b.ratio = max_ratio;
        b
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule() {
        assert!(BoundReport::new(BoundId::Parseval, 1.0, 1.0).pass);
        assert!(BoundReport::new(BoundId::Parseval, 1.0 + 5e-10, 1.0).pass);
        assert!(!BoundReport::new(BoundId::Parseval, 1.0 + 2e-9, 1.0).pass);
        assert!(BoundReport::new(BoundId::Parseval, 100.0 + 5e-8, 100.0).pass);
        assert!(!BoundReport::new(BoundId::Parseval, 100.0 + 2e-7, 100.0).pass);
    }

    #[test]
    fn worst_keeps_lowest_slack_and_largest_ratio() {
        let a = BoundReport::new(BoundId::SelfBound, 0.5, 1.0).with_ratio(0.5);
        let b = BoundReport::new(BoundId::SelfBound, 0.1, 1.0).with_ratio(3.0);
        let w = worst([a, b]).unwrap();
        assert_eq!(w.lhs, 0.5);
        assert_eq!(w.ratio, Some(3.0));
        assert!(worst(Vec::new()).is_none());
    }

    #[test]
    fn locations_are_one_based() {
        assert_eq!(Location::point(0b101).to_string(), "x={1 3}");
        assert_eq!(Location::pair(0, 1).to_string(), "i=1 j=2");
    }
}
