use crate::hypercube::CubeFunction;
use crate::numeric::popcount;
use crate::{Error, Result};

fn check_prefix(n: usize, k: usize) -> Result<usize> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    Ok((1usize << k) - 1)
}

/// `hs_k(x) = min{1, 2 w_k(x) / k}` where `w_k` counts the ones among the
/// first `k` coordinates.
pub fn hockey_stick(n: usize, k: usize) -> Result<CubeFunction> {
    let prefix = check_prefix(n, k)?;
    CubeFunction::from_fn(n, |m| (2.0 * popcount(m & prefix) as f64 / k as f64).min(1.0))
}

/// `maj_k(x) = 1` iff `w_k(x) >= k/2` (ties count as 1).
pub fn majority(n: usize, k: usize) -> Result<CubeFunction> {
    let prefix = check_prefix(n, k)?;
    CubeFunction::from_fn(n, |m| if 2 * popcount(m & prefix) >= k { 1.0 } else { 0.0 })
}

/// Monotone 1-self-bounding function on three coordinates that is not XOS.
pub fn separation_example() -> CubeFunction {
    // Indexed by mask: {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}.
    let values = vec![0.0, 0.2, 0.4, 0.6, 0.6, 0.8, 0.6, 1.0];
    CubeFunction::new(3, values).expect("fixed table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{is_monotone, is_submodular};

    #[test]
    fn hockey_stick_examples() {
        assert_eq!(hockey_stick(2, 2).unwrap().values(), &[0.0, 1.0, 1.0, 1.0]);
        let hs4 = hockey_stick(4, 4).unwrap();
        for m in [1, 2, 4, 8] {
            assert_eq!(hs4.value(m), 0.5);
        }
        assert!(is_submodular(&hs4).unwrap().holds());
        assert!(is_monotone(&hs4).unwrap().holds());
        assert!(hockey_stick(3, 4).is_err());
        assert!(hockey_stick(3, 0).is_err());
    }

    #[test]
    fn hockey_stick_ignores_trailing_coordinates() {
        let f = hockey_stick(5, 3).unwrap();
        for m in 0..32 {
            assert_eq!(f.value(m), f.value(m & 0b111));
        }
    }

    #[test]
    fn majority_examples() {
        assert_eq!(majority(1, 1).unwrap().values(), &[0.0, 1.0]);
        let m2 = majority(2, 2).unwrap();
        assert_eq!(m2.value(0b01), 1.0);
        assert_eq!(m2.value(0b00), 0.0);
        let m3 = majority(3, 3).unwrap();
        assert_eq!(m3.value(0b011), 1.0);
        assert_eq!(m3.value(0b100), 0.0);
    }

    #[test]
    fn separation_table() {
        let f = separation_example();
        assert_eq!(f.value(0b001), 0.2);
        assert_eq!(f.value(0b100), 0.6);
        assert_eq!(f.value(0b101), 0.8);
        assert_eq!(f.value(0b111), 1.0);
    }
}
