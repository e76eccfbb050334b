//! Seeded random corpora. Member `i` draws from its own generator seeded by
//! `derive_seed(seed, i)`, so corpora are identical for any thread count.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hypercube::CubeFunction;
use crate::numeric::{bits, derive_seed};
use crate::zoo::{boolean_to_submodular, hockey_stick, is_submodular, Mdnf, VectorSet, XosRep};
use crate::{Error, Result};

fn member_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index as u64))
}

fn build<T: Send, F>(count: usize, seed: u64, make: F) -> Result<Vec<T>>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<T> + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| make(i, &mut member_rng(seed, i)))
        .collect()
}

fn check_max(max_n: usize, least: usize) -> Result<()> {
    if max_n < least {
        return Err(Error::InvalidParameter(format!("corpus dimension bound {max_n} must be at least {least}")));
    }
    Ok(())
}

/// Tables with `1 <= n <= max_n` and values uniform in `[0, 1)`.
pub fn random_tables(count: usize, max_n: usize, seed: u64) -> Result<Vec<CubeFunction>> {
    check_max(max_n, 1)?;
    build(count, seed, |_, rng| {
        let n = rng.gen_range(1..=max_n);
        let values = (0..1usize << n).map(|_| rng.gen::<f64>()).collect();
        CubeFunction::new(n, values)
    })
}

fn random_clauses(rng: &mut ChaCha8Rng, n: usize, clauses: usize) -> Vec<Vec<f64>> {
    (0..clauses)
        .map(|_| (0..n).map(|_| if rng.gen_bool(0.25) { 0.0 } else { rng.gen::<f64>() }).collect())
        .collect()
}

/// An XOS representation with `clauses` random sparse clauses, scaled so the
/// maximum value is 1.
pub fn random_xos(n: usize, clauses: usize, seed: u64) -> Result<XosRep> {
    if clauses == 0 {
        return Err(Error::InvalidParameter("at least one clause is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    XosRep::new(n, random_clauses(&mut rng, n, clauses))?.normalized()
}

/// XOS representations with `1 <= n <= max_n`, `1..=max_clauses` clauses and
/// `||f||_inf <= 1`.
pub fn xos_corpus(count: usize, max_n: usize, max_clauses: usize, seed: u64) -> Result<Vec<XosRep>> {
    check_max(max_n, 1)?;
    if max_clauses == 0 {
        return Err(Error::InvalidParameter("at least one clause is required".into()));
    }
    build(count, seed, |_, rng| {
        let n = rng.gen_range(1..=max_n);
        let c = rng.gen_range(1..=max_clauses);
        XosRep::new(n, random_clauses(rng, n, c))?.normalized()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubmodularKind {
    HockeyStick,
    BudgetedLinear,
    ConcaveOfModular,
    Coverage,
    Embedded,
}

impl SubmodularKind {
    const ALL: [SubmodularKind; 5] = [
        SubmodularKind::HockeyStick,
        SubmodularKind::BudgetedLinear,
        SubmodularKind::ConcaveOfModular,
        SubmodularKind::Coverage,
        SubmodularKind::Embedded,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SubmodularKind::HockeyStick => "hockey_stick",
            SubmodularKind::BudgetedLinear => "budgeted_linear",
            SubmodularKind::ConcaveOfModular => "concave_of_modular",
            SubmodularKind::Coverage => "coverage",
            SubmodularKind::Embedded => "embedded",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubmodularMember {
    pub kind: SubmodularKind,
    pub function: CubeFunction,
}

fn scale_to_unit(f: CubeFunction) -> Result<CubeFunction> {
    let top = f.values().iter().fold(0.0f64, |a, &v| a.max(v));
    if top > 0.0 {
        f.map(|_, v| v / top)
    } else {
        Ok(f)
    }
}

fn random_submodular(kind: SubmodularKind, max_n: usize, rng: &mut ChaCha8Rng) -> Result<CubeFunction> {
    match kind {
        SubmodularKind::HockeyStick => {
            let n = rng.gen_range(2..=max_n);
            hockey_stick(n, rng.gen_range(1..=n))
        }
        SubmodularKind::BudgetedLinear => {
            let n = rng.gen_range(2..=max_n);
            let w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 3.0 / n as f64).collect();
            CubeFunction::from_fn(n, |x| bits(x).iter().map(|&i| w[i]).sum::<f64>().min(1.0))
        }
        SubmodularKind::ConcaveOfModular => {
            let n = rng.gen_range(2..=max_n);
            let a: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let b: Vec<f64> = (0..n).map(|_| 0.2 * rng.gen::<f64>()).collect();
            let shape = rng.gen_range(0..3);
            let g = move |t: f64| match shape {
                0 => t.sqrt(),
                1 => 1.0 - (-t).exp(),
                _ => t.min(1.0),
            };
            let f = CubeFunction::from_fn(n, |x| {
                let ones = bits(x);
                g(ones.iter().map(|&i| a[i]).sum()) + ones.iter().map(|&i| b[i]).sum::<f64>()
            })?;
            scale_to_unit(f)
        }
        SubmodularKind::Coverage => {
            let n = rng.gen_range(2..=max_n);
            let items = rng.gen_range(1..=8);
            let weight: Vec<f64> = (0..items).map(|_| rng.gen::<f64>() + 0.05).collect();
            let covers: Vec<u32> = (0..n)
                .map(|_| (0..items).filter(|_| rng.gen_bool(0.4)).fold(0u32, |m, j| m | 1 << j))
                .collect();
            let total: f64 = weight.iter().sum();
            CubeFunction::from_fn(n, |x| {
                let union = bits(x).iter().fold(0u32, |m, &i| m | covers[i]);
                (0..items).filter(|j| union >> j & 1 == 1).map(|j| weight[j]).sum::<f64>() / total
            })
        }
        SubmodularKind::Embedded => {
            let k = rng.gen_range(1..=4usize.min(max_n));
            let values: Vec<f64> = (0..1usize << k).map(|_| if rng.gen_bool(0.5) { 1.0 } else { 0.0 }).collect();
            boolean_to_submodular(&CubeFunction::new(k, values)?)
        }
    }
}

/// Monotone submodular functions into `[0, 1]`, cycling through the kinds in
/// [`SubmodularKind`] order. Every member is checked with [`is_submodular`].
pub fn submodular_corpus(count: usize, max_n: usize, seed: u64) -> Result<Vec<SubmodularMember>> {
    check_max(max_n, 6)?;
    build(count, seed, |i, rng| {
        let kind = SubmodularKind::ALL[i % SubmodularKind::ALL.len()];
        let function = random_submodular(kind, max_n, rng)?;
        if let Some(w) = is_submodular(&function)?.witness {
            return Err(Error::Precondition(format!("generated {} member {i} is not submodular: {w:?}", kind.as_str())));
        }
        Ok(SubmodularMember { kind, function })
    })
}

/// Vector sets with `1 <= n <= max_n`, one to six vectors, entries in `[-1, 1)`.
pub fn random_vector_sets(count: usize, max_n: usize, seed: u64) -> Result<Vec<VectorSet>> {
    check_max(max_n, 1)?;
    build(count, seed, |_, rng| {
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(1..=6);
        let vectors = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        VectorSet::new(n, vectors)
    })
}

/// Monotone DNFs with `2 <= k <= max_k` variables and one to six terms of size
/// at most four.
pub fn random_mdnfs(count: usize, max_k: usize, seed: u64) -> Result<Vec<Mdnf>> {
    check_max(max_k, 2)?;
    build(count, seed, |_, rng| {
        let k = rng.gen_range(2..=max_k);
        let terms = (0..rng.gen_range(1..=6))
            .map(|_| {
                let size = rng.gen_range(1..=k.min(4));
                sample(rng, k, size).iter().fold(0usize, |m, i| m | 1 << i)
            })
            .collect::<Vec<_>>();
        Mdnf::new(k, terms)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_reproducible() {
        assert_eq!(random_tables(20, 6, 3).unwrap(), random_tables(20, 6, 3).unwrap());
        assert_eq!(xos_corpus(20, 6, 4, 3).unwrap(), xos_corpus(20, 6, 4, 3).unwrap());
        assert_ne!(random_tables(5, 6, 3).unwrap(), random_tables(5, 6, 4).unwrap());
    }

    #[test]
    fn xos_members_are_bounded() {
        for rep in xos_corpus(50, 8, 8, 1).unwrap() {
            let f = rep.to_table().unwrap();
            assert!(f.values().iter().all(|&v| (0.0..=1.0 + 1e-12).contains(&v)));
        }
    }

    #[test]
    fn submodular_members_cover_every_kind() {
        let members = submodular_corpus(25, 6, 9).unwrap();
        for kind in SubmodularKind::ALL {
            assert_eq!(members.iter().filter(|m| m.kind == kind).count(), 5);
        }
        for m in &members {
            assert!(m.function.values().iter().all(|&v| (0.0..=1.0 + 1e-12).contains(&v)));
        }
    }
}
