use rayon::prelude::*;

use super::report::{worst, BoundId, BoundReport, Location};
use crate::hypercube::{CubeFunction, Norm, Spectrum};
use crate::numeric::{bits, character, mean_by, pairwise_sum, pairwise_sum_by, popcount};
use crate::zoo::is_submodular;
use crate::{Error, Result};

/// Default tolerance for exact identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;
/// Tolerance for the fast transform against the definition sum.
pub const ORACLE_TOLERANCE: f64 = 1e-12;
/// Largest dimension for which the `O(4^n)` definition sum is evaluated.
pub const DEFINITION_SUM_MAX_DIM: usize = 12;

/// Expresses `deviation <= tol` as a bound with `lhs = deviation / tol` and
/// `rhs = 1`; the raw deviation is kept as the ratio.
fn identity(bound: BoundId, deviation: f64, tol: f64) -> BoundReport {
    BoundReport::new(bound, deviation / tol, 1.0).with_ratio(deviation)
}

pub fn check_parseval(f: &CubeFunction, s: &Spectrum) -> BoundReport {
    let energy = f.norm_squared();
    let deviation = (s.total_weight() - energy).abs();
    identity(BoundId::Parseval, deviation, IDENTITY_TOLERANCE * energy.max(1.0))
}

/// Largest `|transform(d_i f)(T) - expected(T)|` over all `i` and `T`.
pub fn check_derivative_spectrum(f: &CubeFunction, s: &Spectrum) -> Result<BoundReport> {
    let mut reports = Vec::with_capacity(f.n());
    for i in 0..f.n() {
        let ds = f.derivative(i)?.transform();
        let bit = 1usize << i;
        let deviation = ds
            .coeffs()
            .iter()
            .enumerate()
            .map(|(t, &c)| {
                let expected = if t & bit == 0 { -2.0 * s.coeff(t | bit) } else { 0.0 };
                (c - expected).abs()
            })
            .fold(0.0, f64::max);
        reports.push(identity(BoundId::DerivativeSpectrum, deviation, IDENTITY_TOLERANCE).at(Location::coordinate(i)));
    }
    Ok(worst(reports).unwrap_or_else(|| identity(BoundId::DerivativeSpectrum, 0.0, IDENTITY_TOLERANCE)))
}

/// `||d_ij f||^2` against `16 sum_{S >= {i,j}} f^2(S)` for every pair.
pub fn check_second_derivative_norm(f: &CubeFunction, s: &Spectrum) -> Result<BoundReport> {
    let mut reports = Vec::new();
    for i in 0..f.n() {
        for j in i + 1..f.n() {
            let pair = 1usize << i | 1 << j;
            let direct = f.second_derivative(i, j)?.norm_squared();
            let spectral = 16.0 * s.weight_where(|t| t & pair == pair);
            let deviation = (direct - spectral).abs();
            reports.push(
                identity(BoundId::SecondDerivativeNorm, deviation, IDENTITY_TOLERANCE * direct.max(1.0)).at(Location::pair(i, j)),
            );
        }
    }
    Ok(worst(reports).unwrap_or_else(|| identity(BoundId::SecondDerivativeNorm, 0.0, IDENTITY_TOLERANCE)))
}

/// `2^{-n} sum_x f(x) chi_S(x)` evaluated term by term.
pub fn definition_sum_transform(f: &CubeFunction) -> Result<Vec<f64>> {
    crate::limits::check_cap(f.n(), DEFINITION_SUM_MAX_DIM)?;
    Ok((0..f.len())
        .into_par_iter()
        .map(|set| mean_by(f.len(), |x| f.value(x) * character(set, x)))
        .collect())
}

pub fn check_definition_sum(f: &CubeFunction, s: &Spectrum) -> Result<BoundReport> {
    let oracle = definition_sum_transform(f)?;
    let (set, deviation) = oracle
        .iter()
        .zip(s.coeffs())
        .map(|(a, b)| (a - b).abs())
        .enumerate()
        .fold((0, 0.0), |best, (t, d)| if d > best.1 { (t, d) } else { best });
    Ok(identity(BoundId::DefinitionSum, deviation, ORACLE_TOLERANCE).at(Location::point(set)))
}

/// `W^{>k}(f) <= (1/16k^2) sum_{i,j} ||d_ij f||^2`.
pub fn check_degree2_tail(f: &CubeFunction, k: usize) -> Result<BoundReport> {
    let s = f.transform();
    degree2_tail(&s, f.second_derivative_energy(), k)
}

fn degree2_tail(s: &Spectrum, energy: f64, k: usize) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("the degree-2 tail bound needs k >= 1".into()));
    }
    let lhs = s.tail_weight(k)?;
    let rhs = energy / (16.0 * (k * k) as f64);
    Ok(BoundReport::new(BoundId::Degree2Tail, lhs, rhs).at(Location::Level { level: k }))
}

/// [`check_degree2_tail`] for every `k` in `1..=n`.
pub fn check_degree2_tail_all(f: &CubeFunction, s: &Spectrum) -> Result<Vec<BoundReport>> {
    let energy = f.second_derivative_energy();
    (1..=f.n()).map(|k| degree2_tail(s, energy, k)).collect()
}

fn worst_point<F>(f: &CubeFunction, bound: BoundId, eval: F) -> BoundReport
where
    F: Fn(usize) -> (f64, f64, f64) + Sync,
{
    let reports: Vec<BoundReport> = (0..f.len())
        .into_par_iter()
        .map(|x| {
            let (lhs, rhs, ratio) = eval(x);
            BoundReport::new(bound, lhs, rhs).at(Location::point(x)).with_ratio(ratio)
        })
        .collect();
    worst(reports).expect("a cube has at least two points")
}

fn ratio(lhs: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        lhs / scale
    } else if lhs > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// `sum_{i != j, x_i = x_j = 1} (d_ij f(x))^2 <= 5 f(x)^2` at every point.
/// The ratio is the largest `lhs / f(x)^2`.
pub fn check_xos_pointwise(f: &CubeFunction) -> BoundReport {
    worst_point(f, BoundId::XosPointwiseSquare, |x| {
        let ones = bits(x);
        let mut terms = Vec::with_capacity(ones.len() * ones.len());
        for &i in &ones {
            for &j in &ones {
                let d = f.second_derivative_at(i, j, x);
                terms.push(d * d);
            }
        }
        let lhs = pairwise_sum(&terms);
        let fx2 = f.value(x) * f.value(x);
        (lhs, 5.0 * fx2, ratio(lhs, fx2))
    })
}

/// `sum_{i,j} ||d_ij f||^2 <= 20 ||f||_2^2`; the ratio is `lhs / ||f||_2^2`.
pub fn check_xos_global(f: &CubeFunction) -> BoundReport {
    let lhs = f.second_derivative_energy();
    let norm2 = f.norm_squared();
    BoundReport::new(BoundId::XosGlobalSquare, lhs, 20.0 * norm2).with_ratio(ratio(lhs, norm2))
}

/// `sum_{i : x_i = 1} d_i f(x) <= f(x)` at every point.
pub fn check_self_bound_ineq(f: &CubeFunction) -> BoundReport {
    worst_point(f, BoundId::SelfBound, |x| {
        let ones = bits(x);
        let lhs = pairwise_sum_by(ones.len(), |p| f.derivative_at(ones[p], x));
        let fx = f.value(x);
        (lhs, fx, ratio(lhs, fx))
    })
}

/// `Inf^1(f) <= ||f||_1`.
pub fn check_xos_influence(f: &CubeFunction) -> Result<BoundReport> {
    let lhs = f.total_influence(1.0)?;
    let rhs = f.norm(Norm::L1);
    Ok(BoundReport::new(BoundId::XosInfluence, lhs, rhs).with_ratio(ratio(lhs, rhs)))
}

/// `W^{>k}(f) <= 5/(4k^2)` for every `k` in `1..=n`.
pub fn check_xos_tail_all(s: &Spectrum) -> Vec<BoundReport> {
    let tails = s.tail_weights();
    (1..=s.n())
        .map(|k| BoundReport::new(BoundId::XosTail, tails[k], 5.0 / (4.0 * (k * k) as f64)).at(Location::Level { level: k }))
        .collect()
}

fn require_submodular(f: &CubeFunction) -> Result<()> {
    match is_submodular(f)?.witness {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!("function is not submodular: {w:?}"))),
    }
}

/// `sum_{j in A} ||d_ij f||_1 <= 2 sqrt|A| ||d_i f||_2` for submodular `f`.
pub fn check_sqrt_bound(f: &CubeFunction, i: usize, set: usize) -> Result<BoundReport> {
    if i >= f.n() {
        return Err(Error::CoordinateOutOfRange { coord: i, n: f.n() });
    }
    if set >> f.n() != 0 {
        return Err(Error::InvalidParameter(format!("set {set:#b} exceeds dimension {}", f.n())));
    }
    require_submodular(f)?;
    let l1 = second_derivative_l1(f, i)?;
    let d2 = f.derivative(i)?.norm(Norm::L2);
    Ok(sqrt_bound(i, set, &l1, d2))
}

fn second_derivative_l1(f: &CubeFunction, i: usize) -> Result<Vec<f64>> {
    (0..f.n()).map(|j| Ok(f.second_derivative(i, j)?.norm(Norm::L1))).collect()
}

fn sqrt_bound(i: usize, set: usize, l1: &[f64], d2: f64) -> BoundReport {
    let members = bits(set);
    let lhs = pairwise_sum_by(members.len(), |p| l1[members[p]]);
    let rhs = 2.0 * (members.len() as f64).sqrt() * d2;
    BoundReport::new(BoundId::SqrtBound, lhs, rhs).at(Location::coordinate_and_set(i, set))
}

/// The worst case of [`check_sqrt_bound`] over every coordinate and set.
pub fn check_sqrt_bound_all(f: &CubeFunction) -> Result<BoundReport> {
    require_submodular(f)?;
    let mut reports = Vec::with_capacity(f.n() * f.len());
    for i in 0..f.n() {
        let l1 = second_derivative_l1(f, i)?;
        let d2 = f.derivative(i)?.norm(Norm::L2);
        reports.extend((0..f.len()).map(|set| sqrt_bound(i, set, &l1, d2)));
    }
    Ok(worst(reports).expect("at least one coordinate"))
}

/// `||h||_2 <= sqrt 2 ||h||_T` for `h` with range in `[-1, 1]`.
pub fn check_2_vs_t(h: &CubeFunction) -> Result<BoundReport> {
    let sup = h.norm(Norm::Infinity);
    if sup > 1.0 + 1e-9 {
        return Err(Error::Precondition(format!("range exceeds [-1, 1]: sup |h| = {sup}")));
    }
    let lhs = h.norm(Norm::L2);
    let t = h.threshold_norm();
    Ok(BoundReport::new(BoundId::TwoVsThreshold, lhs, 2f64.sqrt() * t).with_ratio(ratio(lhs, t)))
}

/// `(1/2) sum_{S >= {i,j}} f^2(S) <= |f^({i,j})|`, worst pair; `None` when `n < 2`.
pub fn check_upper_bound_sum(s: &Spectrum) -> Option<BoundReport> {
    let n = s.n();
    let mut reports = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let pair = 1usize << i | 1 << j;
            let lhs = 0.5 * s.weight_where(|t| t & pair == pair);
            reports.push(BoundReport::new(BoundId::UpperBoundSum, lhs, s.coeff(pair).abs()).at(Location::pair(i, j)));
        }
    }
    worst(reports)
}

/// Coordinates with `|f^({i})| >= alpha` or some `|f^({i,j})| >= beta`.
pub fn important_variables(s: &Spectrum, alpha: f64, beta: f64) -> usize {
    let n = s.n();
    let mut set = 0usize;
    for i in 0..n {
        if s.coeff(1 << i).abs() >= alpha {
            set |= 1 << i;
        }
        for j in 0..n {
            if j != i && s.coeff(1 << i | 1 << j).abs() >= beta {
                set |= 1 << i;
            }
        }
    }
    set
}

/// `|important_variables(alpha, beta)| <= 2 / min(alpha, beta)`.
pub fn check_important_variables(s: &Spectrum, alpha: f64, beta: f64) -> Result<BoundReport> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidParameter(format!("thresholds must be positive, got {alpha}, {beta}")));
    }
    let count = popcount(important_variables(s, alpha, beta)) as f64;
    Ok(BoundReport::new(BoundId::ImportantVariables, count, 2.0 / alpha.min(beta)).at(Location::Thresholds { alpha, beta }))
}

/// Largest second derivative against 0.
pub fn check_submodularity(f: &CubeFunction) -> BoundReport {
    let n = f.n();
    let mut best = BoundReport::new(BoundId::Submodularity, f64::NEG_INFINITY, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (1usize << i, 1usize << j);
            for x in (0..f.len()).filter(|x| x & (bi | bj) == 0) {
                let d = f.second_derivative_at(i, j, x);
                if d > best.lhs {
                    best = BoundReport::new(BoundId::Submodularity, d, 0.0).at(Location::pair(i, j));
                }
            }
        }
    }
    if best.lhs == f64::NEG_INFINITY {
        best = BoundReport::new(BoundId::Submodularity, 0.0, 0.0);
    }
    best
}

/// `{i : Pr_x[|d_i f(x)| >= eps] >= delta}`.
pub fn large_derivative_census(f: &CubeFunction, eps: f64, delta: f64) -> Result<usize> {
    if !(eps > 0.0 && delta > 0.0) {
        return Err(Error::InvalidParameter(format!("census parameters must be positive, got {eps}, {delta}")));
    }
    let mut set = 0;
    for i in 0..f.n() {
        let hits = (0..f.len()).filter(|&x| f.derivative_at(i, x).abs() >= eps).count();
        if hits as f64 / f.len() as f64 >= delta {
            set |= 1 << i;
        }
    }
    Ok(set)
}

/// `{i : ||d_i f||_T >= eps}`.
pub fn threshold_census(f: &CubeFunction, eps: f64) -> Result<usize> {
    let mut set = 0;
    for i in 0..f.n() {
        if f.derivative(i)?.threshold_norm() >= eps {
            set |= 1 << i;
        }
    }
    Ok(set)
}
