//! Exact scalars, Laurent polynomials, small matrices and spectral utilities.

mod laurent;
mod matrix;
mod rational;
pub mod spectral;

pub use laurent::LaurentPolynomial;
pub use matrix::SmallMatrix;
pub use rational::{rat, ParseRationalError, Rational};
pub use spectral::{spectral_norm, spectral_radius, SpectralError, DEFAULT_TOLERANCE};
