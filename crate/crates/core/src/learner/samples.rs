use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hypercube::CubeFunction;
use crate::limits::check_dimension;
use crate::numeric::{character, derive_seed, pairwise_sum_by};
use crate::{Error, Result};

const CHUNK: usize = 8192;

/// Labeled examples `(x, f(x))` and the seed that generated them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    n: usize,
    examples: Vec<(usize, f64)>,
    seed: u64,
}

impl SampleSet {
    pub fn new(n: usize, examples: Vec<(usize, f64)>, seed: u64) -> Result<Self> {
        check_dimension(n)?;
        if examples.is_empty() {
            return Err(Error::Precondition("a sample set needs at least one example".into()));
        }
        for (index, &(x, y)) in examples.iter().enumerate() {
            if x >> n != 0 {
                return Err(Error::InvalidParameter(format!("example {index} has point {x:#b} outside dimension {n}")));
            }
            if !y.is_finite() {
                return Err(Error::NonFinite { index, value: y });
            }
        }
        Ok(SampleSet { n, examples, seed })
    }

    /// Every point of the cube exactly once.
    pub fn exhaustive(f: &CubeFunction) -> SampleSet {
        SampleSet { n: f.n(), examples: f.values().iter().copied().enumerate().collect(), seed: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn examples(&self) -> &[(usize, f64)] {
        &self.examples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn max_abs_label(&self) -> f64 {
        self.examples.iter().fold(0.0f64, |a, &(_, y)| a.max(y.abs()))
    }
}

/// `m` uniform points labeled by `f`. Points are generated in fixed chunks
/// with derived seeds, so the set depends only on `(f, m, seed)`.
pub fn draw_samples(f: &CubeFunction, m: usize, seed: u64) -> Result<SampleSet> {
    if m == 0 {
        return Err(Error::Precondition("sample count must be at least 1".into()));
    }
    let chunks = m.div_ceil(CHUNK);
    let examples: Vec<(usize, f64)> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, c as u64));
            let count = CHUNK.min(m - c * CHUNK);
            (0..count)
                .map(|_| {
                    let x = rng.gen_range(0..f.len());
                    (x, f.value(x))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(SampleSet { n: f.n(), examples, seed })
}

/// `(1/m) sum label * chi_S(x)` for each requested `S`.
pub fn estimate_coefficients(samples: &SampleSet, subsets: &[usize]) -> Result<Vec<f64>> {
    if let Some(&s) = subsets.iter().find(|&&s| s >> samples.n != 0) {
        return Err(Error::InvalidParameter(format!("subset {s:#b} exceeds dimension {}", samples.n)));
    }
    let ex = &samples.examples;
    let m = ex.len() as f64;
    Ok(subsets
        .par_iter()
        .map(|&s| pairwise_sum_by(ex.len(), |k| ex[k].1 * character(s, ex[k].0)) / m)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_samples_rejected() {
        let f = CubeFunction::constant(3, 1.0).unwrap();
        assert!(matches!(draw_samples(&f, 0, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn determinism() {
        let f = CubeFunction::from_fn(6, |x| x as f64).unwrap();
        assert_eq!(draw_samples(&f, 100, 7).unwrap(), draw_samples(&f, 100, 7).unwrap());
        assert_ne!(draw_samples(&f, 100, 7).unwrap(), draw_samples(&f, 100, 8).unwrap());
    }

    #[test]
    fn constant_labels() {
        let f = CubeFunction::constant(5, 0.3).unwrap();
        let s = draw_samples(&f, 100_000, 1).unwrap();
        assert!(s.examples().iter().all(|&(_, y)| y == 0.3));
        assert!((estimate_coefficients(&s, &[0]).unwrap()[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn exhaustive_estimates_are_exact() {
        let f = CubeFunction::new(2, vec![0.0, 1.0, 1.0, 1.0]).unwrap();
        let est = estimate_coefficients(&SampleSet::exhaustive(&f), &[0, 1, 2, 3]).unwrap();
        assert_eq!(est, f.transform().coeffs());
    }
}
