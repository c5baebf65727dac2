//! Exact scalars and polynomials over the Gaussian rationals `ℚ(i)`.
//!
//! Every distinct-roots decision in the crate goes through
//! [`is_squarefree`] or [`discriminant`] here; nothing is decided on floats.

mod gaussian;
mod poly;
mod scalar;

pub use gaussian::GaussianRational;
pub use poly::{
    discriminant, eval_poly, is_squarefree, poly_gcd, resultant, squarefree_decomposition,
    ExactPoly,
};
pub use scalar::{fmt_decimal, Scalar};
