//! Summation and bit helpers shared across modules.

const PAIRWISE_BLOCK: usize = 32;

/// Pairwise (tree) summation of `term(i)` for `i` in `0..len`.
///
/// The summation order depends only on `len`, so results are bit-stable.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(len: usize, term: F) -> f64 {
    fn go<F: Fn(usize) -> f64>(lo: usize, hi: usize, term: &F) -> f64 {
        if hi - lo <= PAIRWISE_BLOCK {
            let mut acc = 0.0;
            for i in lo..hi {
                acc += term(i);
            }
            acc
        } else {
            let mid = lo + (hi - lo) / 2;
            go(lo, mid, term) + go(mid, hi, term)
        }
    }
    go(0, len, &term)
}

pub fn pairwise_sum(values: &[f64]) -> f64 {
    pairwise_sum_by(values.len(), |i| values[i])
}

/// Uniform mean of `term(i)` over `0..len`.
pub fn mean_by<F: Fn(usize) -> f64>(len: usize, term: F) -> f64 {
    if len == 0 {
        return 0.0;
    }
    pairwise_sum_by(len, term) / len as f64
}

#[inline]
pub fn popcount(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// `chi_S(x) = (-1)^{|S & x|}`.
#[inline]
pub fn character(set: usize, x: usize) -> f64 {
    if (set & x).count_ones() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Indices of the set bits of `mask`, ascending.
pub fn bits(mask: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(popcount(mask));
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

pub fn mask_from_coords(coords: &[usize]) -> usize {
    coords.iter().fold(0, |m, &i| m | (1usize << i))
}

/// Gathers the bits of `x` selected by `mask` into the low bits of the result.
#[inline]
pub fn compress(x: usize, mask: usize) -> usize {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let i = m.trailing_zeros();
        out |= ((x >> i) & 1) << k;
        k += 1;
        m &= m - 1;
    }
    out
}

/// Inverse of [`compress`]: scatters the low bits of `y` onto the positions of `mask`.
#[inline]
pub fn expand(y: usize, mask: usize) -> usize {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let i = m.trailing_zeros();
        out |= ((y >> k) & 1) << i;
        k += 1;
        m &= m - 1;
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
    }
    acc as u64
}

/// SplitMix64 finalizer, used to derive independent per-trial seeds from a
/// master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Formats 1-based coordinate lists for reports.
pub fn one_based(mask: usize) -> Vec<usize> {
    bits(mask).into_iter().map(|i| i + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_inputs() {
        let v: Vec<f64> = (0..100).map(|i| i as f64 * 0.5).collect();
        assert_eq!(pairwise_sum(&v), v.iter().sum::<f64>());
    }

    #[test]
    fn compress_expand_roundtrip() {
        let mask = 0b1011_0100;
        for y in 0..16 {
            assert_eq!(compress(expand(y, mask), mask), y);
        }
        assert_eq!(compress(0b1000_0100, mask), 0b1001);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }

    #[test]
    fn character_sign_convention() {
        assert_eq!(character(0b1, 0b1), -1.0);
        assert_eq!(character(0b11, 0b11), 1.0);
        assert_eq!(character(0, 0b111), 1.0);
    }
}
