//! Invariant polynomials p with p o h = J p for the Lyness map h, and the
//! integrals they give.

mod integrals;
mod invariants;
mod system;

pub use integrals::{integrals, IntegralCheck};
pub use invariants::{
    build_invariants, random_parameters, vanishing_orders, verify_relations, Check, Invariant, InvariantSet,
    VanishingReport,
};
pub use system::{affine_text, linear_families, LinearFamily, LynessSystem, PolyText};
