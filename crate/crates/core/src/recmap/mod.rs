//! The recurrence family x_{n+k+1} = (alpha . x) / (beta . x) realized as
//! birational maps of P^k.

mod degseq;
mod map;
mod params;

pub use degseq::{
    degree_sequence, degree_sequence_capped, degree_sequence_empirical, degree_sequence_exact, line_degrees,
    line_degrees_capped,
};
pub use map::{Covector, Direction, EvalOutcome, ProjPoint, RecurrenceMap, TriangleType};
pub use params::ParamFile;
