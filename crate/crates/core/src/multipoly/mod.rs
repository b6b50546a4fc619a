//! Sparse homogeneous polynomials in k+1 variables and dense univariate
//! polynomials, generic over an exact field.

mod homog;
mod monomial;
mod uni;

pub use homog::HomogPoly;
pub use monomial::{Monomial, MAX_SLOTS};
pub use uni::{uni_gcd_strip, UniPoly};
