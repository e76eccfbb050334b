use crate::hypercube::CubeFunction;
use crate::numeric::{binomial, popcount};
use crate::{Error, Result};

/// Position of `set` among the `|set|`-subsets of a `universe`-element ground
/// set in lexicographic order of their sorted element lists.
pub fn subset_rank(set: usize, universe: usize) -> Result<u64> {
    if universe < usize::BITS as usize && set >> universe != 0 {
        return Err(Error::InvalidParameter(format!("set {set:#b} is not inside a {universe}-element ground set")));
    }
    let size = popcount(set);
    let mut rank = 0u64;
    let mut remaining = size;
    for v in 0..universe {
        if remaining == 0 {
            break;
        }
        if set >> v & 1 == 1 {
            remaining -= 1;
        } else {
            // Every subset that takes `v` here and agrees on the prefix comes first.
            rank += binomial((universe - v - 1) as u64, (remaining - 1) as u64);
        }
    }
    Ok(rank)
}

/// Inverse of [`subset_rank`] for `size`-subsets of a `universe`-element set.
pub fn subset_unrank(index: u64, size: usize, universe: usize) -> Result<usize> {
    let count = binomial(universe as u64, size as u64);
    if index >= count || universe >= usize::BITS as usize {
        return Err(Error::RankOutOfRange { index, count });
    }
    let mut set = 0usize;
    let mut index = index;
    let mut remaining = size;
    for v in 0..universe {
        if remaining == 0 {
            break;
        }
        let with_v = binomial((universe - v - 1) as u64, (remaining - 1) as u64);
        if index < with_v {
            set |= 1 << v;
            remaining -= 1;
        } else {
            index -= with_v;
        }
    }
    Ok(set)
}

/// Smallest `t` with `C(2t, t) >= 2^k`.
pub fn middle_layer_half(k: usize) -> usize {
    let need = 1u128 << k.min(120);
    (1usize..)
        .find(|&t| t >= 64 || binomial(2 * t as u64, t as u64) as u128 >= need)
        .expect("unbounded search")
}

/// Embeds a Boolean `h` on `k` bits into the middle layer of `{0,1}^{2t}`.
///
/// Off the middle layer the result is `hs_{2t}`. The `y`-th middle-layer point
/// in lexicographic order takes `1 - (1 - h(y)) / (2t)`; the remaining middle
/// points take 1.
pub fn boolean_to_submodular(h: &CubeFunction) -> Result<CubeFunction> {
    h.ensure_boolean()?;
    let k = h.n();
    let t = middle_layer_half(k);
    let n = 2 * t;
    let codes = h.len() as u64;
    let drop = 1.0 / n as f64;
    CubeFunction::from_fn(n, |x| {
        let w = popcount(x);
        if w != t {
            return (2.0 * w as f64 / n as f64).min(1.0);
        }
        let idx = subset_rank(x, n).expect("mask fits the ground set");
        if idx < codes {
            1.0 - (1.0 - h.value(idx as usize)) * drop
        } else {
            1.0
        }
    })
}
