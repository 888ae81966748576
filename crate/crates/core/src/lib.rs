//! Finite topological spaces, amalgams of spaces over a subbase, and
//! exhaustive verification of their structural properties.
//!
//! An amalgam over a finite T0 base space `X` with subbase `𝒮` attaches a
//! factor space `Y_S` to every `S ∈ 𝒮`. Its points are pairs `(p, y)` with
//! `p ∈ X` and `y` a choice of a point of `Y_S` for every `S ∋ p`; its
//! topology is generated by the preimages of factor opens under the partial
//! projections `y ↦ y(S)`.

pub mod amalgam;
pub mod cli;
pub mod constructions;
pub mod document;
pub mod error;
pub mod harness;
pub mod pointset;
pub mod topology;

pub use error::{Error, Result};
pub use pointset::PointSet;
pub use topology::{ContinuousMap, SpecPreorder, TopSpace};
