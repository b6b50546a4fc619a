pub mod error;
pub mod exactnum;

pub use error::{Error, Result};
pub use exactnum::{FieldKind, Rational, Scalar};
pub mod multipoly;

pub use multipoly::{HomogPoly, UniPoly};
pub mod linalg;
pub mod recmap;
pub mod rng;

pub use recmap::{Covector, Direction, ProjPoint, RecurrenceMap};
pub mod orbits;
pub use orbits::{LinearSubspace, OrbitChain};
pub mod picaction;
pub use picaction::{GrowthClass, IntPoly, PicMatrix};
pub mod certify;
pub use certify::{certify_period, classify_map, CertifyOutcome, ClassificationReport};
pub mod lyinv;
pub use lyinv::{build_invariants, InvariantSet, LynessSystem};
