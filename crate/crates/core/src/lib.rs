//! Pure algorithms for spectral extremal problems on friendship-free graphs.
//!
//! The crate is `no_std` (it needs `alloc`) and covers:
//!
//! * [`graph`]: an immutable bitset [`Graph`] value type,
//! * [`families`]: the extremal constructions (`K_{a,b}^+`, `K_k ∨ I_s`, fans, ...),
//! * [`graph6`] and [`canon`]: interchange format and canonical keys,
//! * [`detect`]: fan (`F_k`) containment through neighbourhood matchings and bowtie counts,
//! * [`spectral`], [`cubic`], [`quotient`], [`bounds`], [`decompose`], [`pspectral`]:
//!   certified spectral radii, characteristic cubics, closed-form bounds and
//!   the p-spectral radius ascent,
//! * [`exact`]: rational and quadratic-surd arithmetic used for exact sign tests
//!   and for adjudicating spectral ties.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod canon;
pub mod cubic;
pub mod decompose;
pub mod detect;
mod error;
pub mod exact;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod pspectral;
pub mod quotient;
pub mod spectral;

pub use canon::{canonical_form, canonical_key, canonical_labeling, CanonicalKey};
pub use detect::{contains_fan, count_bowties, matching_number, FanWitness};
pub use error::{GraphError, SpectralError};
pub use families::FamilySpec;
pub use graph::Graph;

pub use spectral::{spectral_radius, SpectralEstimate};
