//! Exact Fourier analysis of real-valued functions on the Boolean hypercube
//! `{0,1}^n`, with constructors for submodular, XOS and self-bounding
//! families, inequality verifiers, and a low-degree PAC learner.
//!
//! Points of the cube are bitmasks: bit `i` of a mask is coordinate
//! `x_{i+1}`. All library APIs take 0-based coordinates; reports and CLI
//! output use 1-based coordinates.
//!
//! Characters follow `chi_S(x) = (-1)^{sum_{i in S} x_i}`, so for `f(x) = x_1`
//! on one variable the spectrum is `{0: 1/2, {1}: -1/2}`.

pub mod analysis;
pub mod cli;
mod error;
pub mod hypercube;
pub mod learner;
pub mod limits;
pub mod numeric;
pub mod zoo;

pub use error::{Error, Result};
pub use hypercube::{CubeFunction, Norm, SparsePolynomial, Spectrum};
