//! Trigonometric polynomials on `(0, 2π)`, signal representations and
//! their Fourier coefficients.

mod poly;
mod sampled;
mod signal;

pub use poly::{sobolev_per_norm, TrigPoly};
pub use sampled::{fourier_coeffs_quadrature, SampledSignal};
pub use signal::{
    fourier_coeffs_exact, l2_error_exact, ExactSignal, Piece, Polynomial, TrigKind, TrigTerm,
    MAX_PIECE_DEGREE,
};
