//! Process-wide dimension cap.
//!
//! The cap defaults to 24 and can be overridden with the
//! `BOOLCUBE_MAX_DIM` environment variable or [`set_max_dimension`].

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::{Error, Result};

pub const DEFAULT_MAX_DIMENSION: usize = 24;
/// Masks are `usize`; tables beyond this size are not addressable anyway.
pub const HARD_MAX_DIMENSION: usize = 30;
pub const MAX_DIM_ENV: &str = "BOOLCUBE_MAX_DIM";

static OVERRIDE: AtomicUsize = AtomicUsize::new(0);

pub fn max_dimension() -> usize {
    let set = OVERRIDE.load(Ordering::Relaxed);
    if set != 0 {
        return set;
    }
    std::env::var(MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .map(|v| v.min(HARD_MAX_DIMENSION))
        .unwrap_or(DEFAULT_MAX_DIMENSION)
}

/// Overrides the cap for this process. Values are clamped to
/// [`HARD_MAX_DIMENSION`].
pub fn set_max_dimension(cap: usize) {
    OVERRIDE.store(cap.clamp(1, HARD_MAX_DIMENSION), Ordering::Relaxed);
}

pub fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    check_cap(n, max_dimension())
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::DimensionTooLarge { n, cap })
    } else {
        Ok(())
    }
}
