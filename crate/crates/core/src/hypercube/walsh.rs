//! In-place fast Walsh-Hadamard butterfly.

use rayon::prelude::*;

/// Below this table size the butterfly always runs sequentially.
const PARALLEL_THRESHOLD: usize = 1 << 16;

#[inline(always)]
fn butterfly(a: &mut f64, b: &mut f64) {
    let (x, y) = (*a, *b);
    *a = x + y;
    *b = x - y;
}

/// Unnormalized Walsh-Hadamard transform:
/// `data[S] <- sum_x data[x] * (-1)^{|S & x|}`.
///
/// `data.len()` must be a power of two. Every output entry is produced by
/// the same sequence of additions regardless of the thread schedule, so the
/// result is bit-identical to the sequential run.
pub fn fwht(data: &mut [f64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "fwht length must be a power of two");
    let parallel = len >= PARALLEL_THRESHOLD;
    let mut h = 1;
    while h < len {
        if parallel {
            data.par_chunks_mut(2 * h).for_each(|block| {
                let (lo, hi) = block.split_at_mut(h);
                if h >= PARALLEL_THRESHOLD {
                    lo.par_iter_mut()
                        .zip(hi.par_iter_mut())
                        .for_each(|(a, b)| butterfly(a, b));
                } else {
                    lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| butterfly(a, b));
                }
            });
        } else {
            for block in data.chunks_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| butterfly(a, b));
            }
        }
        h *= 2;
    }
}
