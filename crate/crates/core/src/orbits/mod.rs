//! Linear subspaces and their images under a recurrence map.

mod chain;
mod nstar;
mod probe;
mod subspace;
mod transform;

pub use chain::{
    exceptional_chain, identify, named_chain, named_hypersurface, named_intersection, prefixed_equations,
    prefixed_subspace, ChainStep, Named, OrbitChain, Prefixed, StopReason,
};
pub use nstar::{default_nstar_bound, find_nstar, NStarResult, NStarStop};
pub use probe::{regularity_probe, OrbitProbe, ProbeReport, ProbeStep, Violation};
pub use subspace::LinearSubspace;
pub use transform::{blowup_image, image_step, in_indeterminacy, strict_transform, StepKind};
