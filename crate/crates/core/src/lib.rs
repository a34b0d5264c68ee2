//! Plumbing graphs of lens spaces, their duals, and the lattice embeddings
//! of dual intersection forms into standard diagonal lattices.

mod error;

pub mod analysis;
pub mod appendix;
pub mod conditions;
pub mod contfrac;
pub mod duality;
pub mod embeddings;
pub mod fillings;
pub mod graphs;
pub mod lattice;
pub mod verify;

pub use contfrac::{evaluate, expand, ChainWeights, LensSpace};
pub use duality::{b2, dualize, dualize_component};
pub use error::{Error, Result};
pub use graphs::{
    contains_induced, count_induced, induced_occurrences, AdjustedView, Convention, LinearGraph,
    Pattern, VertexId,
};
