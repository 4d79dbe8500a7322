//! Polynomial and matrix substrate shared by every other module.

mod bivar;
mod charpoly;
mod laurent;
mod matrix;
mod pencil;
mod scalar;

pub use bivar::{BivarPoly, BivarRecord};
pub use charpoly::{
    char_poly_cofactor, char_poly_faddeev, char_poly_numeric, det_cofactor, CharPoly,
};
pub use laurent::LaurentPoly;
pub use matrix::{commutator, Matrix};
pub use pencil::MatrixPencil;
pub use scalar::{c64, q, Ring, Scalar, C64, Q};

/// Relative threshold below which a numeric coefficient counts as zero.
pub const ZERO_REL_TOL: f64 = 1e-12;
