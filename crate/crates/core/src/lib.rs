//! Connected components of strata of k-differentials.
//!
//! The crate is organised around [`Signature`], the triple `(k, g, κ)` naming a
//! stratum `Ω^k M_g(κ)`. On top of it sit
//!
//! * [`genus_one`]: rotation-number classification, merges and splits in genus one,
//! * [`framing`]: winding-number calculus, Arf and relative Arf invariants,
//! * [`prong`]: prong-matching class counts,
//! * [`degeneration`]: signature-level splits, merges and genus-zero cylinders,
//! * [`classifier`]: counts and labels of primitive nonhyperelliptic components,
//! * [`quartic`]: exact rational verification of the sporadic genus-three
//!   cubic-differential constructions,
//! * [`batch`]: data-parallel sweeps over many signatures.
//!
//! With the default `parallel` feature the batch sweeps and the larger
//! determinant eliminations run on rayon; without it everything is sequential.

pub mod arith;
pub mod batch;
pub mod classifier;
pub mod degeneration;
pub mod framing;
pub mod genus_one;
pub mod prong;
pub mod quartic;
pub mod signature;

pub use batch::Execution;
pub use classifier::{
    full_component_breakdown, primitive_nonhyperelliptic_components, BreakdownRow,
    ClassifyError, ComponentDescriptor, ComponentReport,
};
pub use signature::{Signature, SignatureError};
