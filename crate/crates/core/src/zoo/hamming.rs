use crate::hypercube::CubeFunction;
use crate::limits::check_dimension;
use crate::{Error, Result};

/// Systematic Hamming code with `r` parity bits and `2^r - r - 1` data bits.
///
/// Codeword positions are `1..2^r`; parity sits at the powers of two and data
/// fills the remaining positions in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingCode {
    r: usize,
    data_positions: Vec<usize>,
}

impl HammingCode {
    pub fn new(r: usize) -> Result<Self> {
        if !(2..=5).contains(&r) {
            return Err(Error::InvalidParameter(format!("parity bit count {r} must be in 2..=5")));
        }
        let data_positions = (1..1usize << r).filter(|p| !p.is_power_of_two()).collect();
        Ok(HammingCode { r, data_positions })
    }

    pub fn parity_bits(&self) -> usize {
        self.r
    }

    pub fn data_bits(&self) -> usize {
        self.data_positions.len()
    }

    /// Parity bits `c(x)` for a data word `x`; bit `l` covers positions with bit `l` set.
    pub fn encode(&self, x: usize) -> usize {
        self.data_positions
            .iter()
            .enumerate()
            .filter(|(j, _)| x >> j & 1 == 1)
            .fold(0, |acc, (_, &p)| acc ^ p)
    }

    /// Data word followed by its parity bits, as a `k + r` bit mask.
    pub fn codeword(&self, x: usize) -> usize {
        x | self.encode(x) << self.data_bits()
    }
}

/// `f(x o z) = h(x)` if `z = c(x)` and 1 otherwise, over `k + r` bits with
/// `x` in the low `k` bits.
pub fn hamming_self_bounding(h: &CubeFunction, r: usize) -> Result<CubeFunction> {
    h.ensure_boolean()?;
    let code = HammingCode::new(r)?;
    let k = code.data_bits();
    if h.n() != k {
        return Err(Error::DimensionMismatch { left: h.n(), right: k });
    }
    check_dimension(k + r)?;
    let data = (1usize << k) - 1;
    CubeFunction::from_fn(k + r, |m| {
        let x = m & data;
        if m >> k == code.encode(x) {
            h.value(x)
        } else {
            1.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::popcount;
    use crate::zoo::is_self_bounding;

    #[test]
    fn code_shape() {
        let code = HammingCode::new(3).unwrap();
        assert_eq!(code.data_bits(), 4);
        assert_eq!(code.encode(0), 0);
        assert!(HammingCode::new(1).is_err());
    }

    #[test]
    fn minimum_distance_three() {
        for r in 2..=4 {
            let code = HammingCode::new(r).unwrap();
            let words: Vec<usize> = (0..1usize << code.data_bits()).map(|x| code.codeword(x)).collect();
            for (i, &u) in words.iter().enumerate() {
                for &v in &words[i + 1..] {
                    assert!(popcount(u ^ v) >= 3);
                }
            }
        }
    }

    #[test]
    fn parity_target_is_self_bounding() {
        let parity = CubeFunction::from_fn(4, |x| (popcount(x) % 2) as f64).unwrap();
        let f = hamming_self_bounding(&parity, 3).unwrap();
        assert_eq!(f.n(), 7);
        assert!(is_self_bounding(&f, 1.0).unwrap().holds());
        assert!(hamming_self_bounding(&CubeFunction::constant(3, 0.0).unwrap(), 3).is_err());
    }
}
