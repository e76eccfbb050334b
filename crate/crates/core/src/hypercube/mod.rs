//! Dense truth tables, Fourier spectra and the measurements built on them.

mod function;
mod polynomial;
mod spectrum;
pub mod walsh;

pub use function::{CubeFunction, Norm};
pub use polynomial::SparsePolynomial;
pub use spectrum::Spectrum;
