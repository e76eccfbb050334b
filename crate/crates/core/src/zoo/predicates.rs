use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::simplex;
use crate::hypercube::CubeFunction;
use crate::limits::check_cap;
use crate::numeric::bits;
use crate::{Error, Result};

pub const PREDICATE_TOLERANCE: f64 = 1e-9;
pub const SUBADDITIVE_MAX_DIM: usize = 13;
pub const XOS_MAX_DIM: usize = 10;

/// Evidence that a predicate fails. Coordinates are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `d_i f(point) < 0`, with `point` having bit `coord` cleared.
    Derivative { point: usize, coord: usize, value: f64 },
    /// `d_ij f(point) > 0`, with `point` having bits `i` and `j` cleared.
    SecondDerivative { point: usize, i: usize, j: usize, value: f64 },
    /// A pair of sets violating the defining inequality.
    SetPair { a: usize, b: usize, lhs: f64, rhs: f64 },
    /// A point violating a pointwise inequality.
    Point { point: usize, lhs: f64, rhs: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredicateOutcome {
    pub witness: Option<Witness>,
}

impl PredicateOutcome {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    fn from_first(witness: Option<Witness>) -> Self {
        PredicateOutcome { witness }
    }
}

/// All `d_i f >= -tol`.
pub fn is_monotone(f: &CubeFunction) -> Result<PredicateOutcome> {
    let n = f.n();
    let witness = (0..f.len()).into_par_iter().find_map_first(|x| {
        (0..n).filter(|&i| x >> i & 1 == 0).find_map(|i| {
            let value = f.derivative_at(i, x);
            (value < -PREDICATE_TOLERANCE).then_some(Witness::Derivative { point: x, coord: i, value })
        })
    });
    Ok(PredicateOutcome::from_first(witness))
}

/// All `d_ij f <= tol` for `i != j`.
pub fn is_submodular(f: &CubeFunction) -> Result<PredicateOutcome> {
    let n = f.n();
    let witness = (0..f.len()).into_par_iter().find_map_first(|x| {
        for i in (0..n).filter(|&i| x >> i & 1 == 0) {
            for j in (i + 1..n).filter(|&j| x >> j & 1 == 0) {
                let value = f.second_derivative_at(i, j, x);
                if value > PREDICATE_TOLERANCE {
                    return Some(Witness::SecondDerivative { point: x, i, j, value });
                }
            }
        }
        None
    });
    Ok(PredicateOutcome::from_first(witness))
}

fn scan_pairs<F>(f: &CubeFunction, violates: F) -> Option<Witness>
where
    F: Fn(usize, usize) -> Option<(f64, f64)> + Sync,
{
    (0..f.len()).into_par_iter().find_map_first(|a| {
        (0..f.len()).find_map(|b| violates(a, b).map(|(lhs, rhs)| Witness::SetPair { a, b, lhs, rhs }))
    })
}

/// `f(A u B) + f(A n B) <= f(A) + f(B)` over all pairs; an `O(4^n)` reference
/// for [`is_submodular`].
pub fn is_submodular_by_definition(f: &CubeFunction) -> Result<PredicateOutcome> {
    check_cap(f.n(), SUBADDITIVE_MAX_DIM)?;
    let witness = scan_pairs(f, |a, b| {
        let lhs = f.value(a | b) + f.value(a & b);
        let rhs = f.value(a) + f.value(b);
        (lhs > rhs + PREDICATE_TOLERANCE).then_some((lhs, rhs))
    });
    Ok(PredicateOutcome::from_first(witness))
}

/// `f(A u B) <= f(A) + f(B)` over all pairs, scanned in `(A, B)` order.
pub fn is_subadditive(f: &CubeFunction) -> Result<PredicateOutcome> {
    check_cap(f.n(), SUBADDITIVE_MAX_DIM)?;
    let witness = scan_pairs(f, |a, b| {
        let lhs = f.value(a | b);
        let rhs = f.value(a) + f.value(b);
        (lhs > rhs + PREDICATE_TOLERANCE).then_some((lhs, rhs))
    });
    Ok(PredicateOutcome::from_first(witness))
}

/// `sum_i (f(x) - f(x xor e_i))_+ <= a f(x)` at every point.
pub fn is_self_bounding(f: &CubeFunction, a: f64) -> Result<PredicateOutcome> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("self-bounding constant {a} must be positive")));
    }
    let n = f.n();
    let witness = (0..f.len()).into_par_iter().find_map_first(|x| {
        let fx = f.value(x);
        let lhs: f64 = (0..n).map(|i| (fx - f.value(x ^ 1 << i)).max(0.0)).sum();
        let rhs = a * fx;
        (lhs > rhs + PREDICATE_TOLERANCE).then_some(Witness::Point { point: x, lhs, rhs })
    });
    Ok(PredicateOutcome::from_first(witness))
}

/// Result of the supporting-vector test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XosOutcome {
    /// First set with no additive lower support, and the best support found.
    pub violating_set: Option<usize>,
    pub best_support: Option<f64>,
    /// On success, `certificates[A]` is a nonnegative vector supported on `A`
    /// with `w(A) = f(A)` and `w(B) <= f(B)` for every `B`.
    pub certificates: Vec<Vec<f64>>,
}

impl XosOutcome {
    pub fn holds(&self) -> bool {
        self.violating_set.is_none()
    }
}

enum Support {
    Found(Vec<f64>),
    Missing(f64),
}

fn support_at(f: &CubeFunction, a: usize) -> Result<Support> {
    let n = f.n();
    let target = f.value(a);
    if a == 0 {
        return Ok(Support::Found(vec![0.0; n]));
    }
    let inside = bits(a);
    let k = inside.len();
    let outside = !a & (f.len() - 1);

    // Cheapest superset in each fibre B n A = C, indexed by C compressed to A.
    let mut fibre_min = vec![f64::INFINITY; 1 << k];
    let mut rest = outside;
    loop {
        for (c, slot) in fibre_min.iter_mut().enumerate() {
            let set = inside.iter().enumerate().fold(rest, |m, (p, &i)| if c >> p & 1 == 1 { m | 1 << i } else { m });
            *slot = slot.min(f.value(set));
        }
        if rest == 0 {
            break;
        }
        rest = (rest - 1) & outside;
    }

    let rows: Vec<Vec<f64>> = (1..1usize << k)
        .map(|c| (0..k).map(|p| (c >> p & 1) as f64).collect())
        .collect();
    let rhs: Vec<f64> = (1..1usize << k).map(|c| fibre_min[c].max(0.0)).collect();
    let sol = simplex::maximize(&vec![1.0; k], &rows, &rhs)?;
    if sol.value >= target - PREDICATE_TOLERANCE {
        let scale = if sol.value > target && sol.value > 0.0 { target.max(0.0) / sol.value } else { 1.0 };
        let mut w = vec![0.0; n];
        for (p, &i) in inside.iter().enumerate() {
            w[i] = sol.x[p] * scale;
        }
        Ok(Support::Found(w))
    } else {
        Ok(Support::Missing(sol.value))
    }
}

/// Decides whether `f` is XOS by solving, for every set `A`, the linear program
/// `max w(A)` over nonnegative `w` supported on `A` with `w(B) <= f(B)` for all `B`.
pub fn is_xos(f: &CubeFunction) -> Result<XosOutcome> {
    check_cap(f.n(), XOS_MAX_DIM)?;
    let origin = f.value(0);
    if origin.abs() > PREDICATE_TOLERANCE {
        return Err(Error::NotInXosDomain(format!("f(empty set) = {origin}, expected 0")));
    }
    if let Some((x, &v)) = f.values().iter().enumerate().find(|(_, v)| **v < -PREDICATE_TOLERANCE) {
        return Err(Error::NotInXosDomain(format!("f is negative ({v}) at mask {x}")));
    }
    let supports: Vec<Support> = (0..f.len())
        .into_par_iter()
        .map(|a| support_at(f, a))
        .collect::<Result<_>>()?;
    let mut certificates = Vec::with_capacity(supports.len());
    for (a, s) in supports.into_iter().enumerate() {
        match s {
            Support::Found(w) => certificates.push(w),
            Support::Missing(best) => {
                return Ok(XosOutcome { violating_set: Some(a), best_support: Some(best), certificates: Vec::new() })
            }
        }
    }
    Ok(XosOutcome { violating_set: None, best_support: None, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{hockey_stick, separation_example, XosRep};

    fn certificate_is_valid(f: &CubeFunction, a: usize, w: &[f64]) -> bool {
        let weight = |b: usize| -> f64 { bits(b).iter().map(|&i| w[i]).sum() };
        (weight(a) - f.value(a)).abs() <= 1e-9 && (0..f.len()).all(|b| weight(b) <= f.value(b) + 1e-9)
    }

    fn and2() -> CubeFunction {
        CubeFunction::new(2, vec![0.0, 0.0, 0.0, 1.0]).unwrap()
    }

    fn xor2() -> CubeFunction {
        CubeFunction::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn or2() -> CubeFunction {
        CubeFunction::new(2, vec![0.0, 1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn and_is_not_submodular() {
        let out = is_submodular(&and2()).unwrap();
        assert_eq!(out.witness, Some(Witness::SecondDerivative { point: 0, i: 0, j: 1, value: 1.0 }));
        assert!(!is_submodular_by_definition(&and2()).unwrap().holds());
    }

    #[test]
    fn xor_is_submodular_not_monotone() {
        assert!(is_submodular(&xor2()).unwrap().holds());
        assert!(!is_monotone(&xor2()).unwrap().holds());
    }

    #[test]
    fn hockey_stick_predicates() {
        for k in 1..=6 {
            let f = hockey_stick(6, k).unwrap();
            assert!(is_monotone(&f).unwrap().holds());
            assert!(is_submodular(&f).unwrap().holds());
            assert!(is_subadditive(&f).unwrap().holds());
            assert!(is_self_bounding(&f, 1.0).unwrap().holds());
        }
    }

    #[test]
    fn separation_example_predicates() {
        let f = separation_example();
        assert!(is_monotone(&f).unwrap().holds());
        assert!(is_self_bounding(&f, 1.0).unwrap().holds());
        let sub = is_subadditive(&f).unwrap();
        match sub.witness {
            Some(Witness::SetPair { a, b, lhs, rhs }) => {
                assert_eq!((a, b), (0b001, 0b110));
                assert_eq!(lhs, 1.0);
                assert!((rhs - 0.8).abs() < 1e-15);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let xos = is_xos(&f).unwrap();
        assert!(!xos.holds());
    }

    #[test]
    fn or_is_xos_with_certificates() {
        let f = or2();
        let out = is_xos(&f).unwrap();
        assert!(out.holds());
        for a in 0..4 {
            assert!(certificate_is_valid(&f, a, &out.certificates[a]));
        }
        assert_eq!(out.certificates[0b01], vec![1.0, 0.0]);
    }

    #[test]
    fn xos_tables_pass_and_domain_errors() {
        let rep = XosRep::new(4, vec![vec![0.1, 0.5, 0.0, 0.3], vec![0.4, 0.0, 0.2, 0.2], vec![0.0, 0.3, 0.3, 0.0]]).unwrap();
        let f = rep.to_table().unwrap();
        let out = is_xos(&f).unwrap();
        assert!(out.holds());
        for a in 0..16 {
            assert!(certificate_is_valid(&f, a, &out.certificates[a]));
        }
        let shifted = CubeFunction::constant(2, 1.0).unwrap();
        assert!(matches!(is_xos(&shifted), Err(Error::NotInXosDomain(_))));
        let negative = CubeFunction::new(1, vec![0.0, -1.0]).unwrap();
        assert!(matches!(is_xos(&negative), Err(Error::NotInXosDomain(_))));
        let big = CubeFunction::constant(11, 0.0).unwrap();
        assert!(is_xos(&big).unwrap_err().is_resource_limit());
    }

    #[test]
    fn derivative_and_definition_checks_agree_on_small_cases() {
        for f in [and2(), xor2(), or2(), hockey_stick(3, 3).unwrap(), separation_example()] {
            assert_eq!(is_submodular(&f).unwrap().holds(), is_submodular_by_definition(&f).unwrap().holds());
        }
    }
}
