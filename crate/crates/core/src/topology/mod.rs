//! Finite topological spaces and the point-set checkers built on them.

mod dimension;
mod iso;
mod maps;
mod order;
mod props;
mod space;

pub use dimension::DEFAULT_IND_BOUND;
pub use iso::{
    are_homeomorphic, automorphism_group, find_homeomorphism, homeomorphisms_between,
    is_homogeneous, DEFAULT_ENUMERATION_BOUND, DEFAULT_WITNESS_BOUND,
};
pub use maps::{
    is_continuous, is_embedding, is_homeomorphism, is_open_map, is_quotient_map, ContinuousMap,
};
pub use order::{specialization, SpecPreorder};
pub use props::DEFAULT_HEREDITARY_BOUND;
pub use space::{generate_topology, product_coords, product_index, TopSpace};
pub(crate) use space::checked_product;
