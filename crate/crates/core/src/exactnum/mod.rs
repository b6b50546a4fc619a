//! Exact scalars: rationals, cyclotomic field elements, prime fields, and
//! fixed-point complex embeddings.

mod bigfixed;
mod cyclotomic;
mod field;
mod modular;
mod scalar;

pub use bigfixed::{embed_complex, pi_fixed, BigComplex, BigFixed};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycloElem, CycloField};
pub use field::Field;
pub use modular::{Fp, FpA, FpB, PrimeField, PRIME_A, PRIME_B};
pub use scalar::{FieldKind, Rational, Scalar};
