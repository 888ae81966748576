//! Named constructions: small fixture spaces, finite cones, the connecting
//! chain behind the witness-set connectedness criterion, connectification
//! over a dense embedding, and homogeneity transfer along the subbase
//! stabilizer.

mod connectedness;
mod connectify;
mod dimension;
mod fixtures;
mod homogeneity;

pub use connectedness::{
    connectedness_whole_space, connectedness_with_witness, connecting_chain, whole_space_condition,
    witness_condition, ConnWitness,
};
pub use connectify::{connectify, Connectification, PHI_SEARCH_LIMIT};
pub use dimension::{ind_comparison, IndComparison};
pub use fixtures::{
    circle_amalgam, discrete, finite_circle, indiscrete, pseudo_cone, semicircle_subbase, sierpinski,
};
pub use homogeneity::{
    homogeneity_transfer, subbase_stabilizer, HomogeneityCertificate, HomogeneityOutcome,
};
