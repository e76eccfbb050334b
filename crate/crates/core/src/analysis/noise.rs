use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hypercube::{CubeFunction, Spectrum};
use crate::numeric::{derive_seed, pairwise_sum_by};
use crate::{Error, Result};

const CHUNK: usize = 4096;

/// Parameters of a Monte Carlo noise-sensitivity estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub alpha: f64,
    pub trials: usize,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(alpha: f64, trials: usize, seed: u64) -> Result<Self> {
        check_rate(alpha)?;
        if trials == 0 {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        Ok(NoiseSpec { alpha, trials, seed })
    }
}

fn check_rate(alpha: f64) -> Result<()> {
    if (0.0..=0.5).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("noise rate {alpha} must lie in [0, 1/2]")))
    }
}

/// `Pr[h(x) != h(y)]` for a 0/1-valued `h` from its spectrum:
/// `2 sum_d (1 - (1 - 2 alpha)^d) W^d(h)`.
pub fn noise_sensitivity_from_spectrum(s: &Spectrum, alpha: f64) -> Result<f64> {
    check_rate(alpha)?;
    let levels = s.level_weights();
    let rho = 1.0 - 2.0 * alpha;
    Ok(2.0 * pairwise_sum_by(levels.len(), |d| (1.0 - rho.powi(d as i32)) * levels[d]))
}

/// Exact noise sensitivity of a 0/1-valued table.
pub fn noise_sensitivity_exact(h: &CubeFunction, alpha: f64) -> Result<f64> {
    h.ensure_boolean()?;
    noise_sensitivity_from_spectrum(&h.transform(), alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Sampled `Pr[h(x) != h(y)]` with `y` flipping each bit of `x` with probability
/// `alpha`. Trials run in fixed chunks with derived seeds, so the result does
/// not depend on the thread count.
pub fn noise_sensitivity_mc(h: &CubeFunction, spec: &NoiseSpec) -> Result<NoiseEstimate> {
    h.ensure_boolean()?;
    check_rate(spec.alpha)?;
    if spec.trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required".into()));
    }
    let n = h.n();
    let chunks = spec.trials.div_ceil(CHUNK);
    let flips: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.seed, c as u64));
            let count = CHUNK.min(spec.trials - c * CHUNK);
            let mut hits = 0;
            for _ in 0..count {
                let x: usize = rng.gen_range(0..h.len());
                let mut y = x;
                for i in 0..n {
                    if rng.gen_bool(spec.alpha) {
                        y ^= 1 << i;
                    }
                }
                if h.value(x) != h.value(y) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let p = flips as f64 / spec.trials as f64;
    let std_error = (p * (1.0 - p) / spec.trials as f64).sqrt();
    Ok(NoiseEstimate { estimate: p, std_error })
}
