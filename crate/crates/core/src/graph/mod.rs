//! Simple graphs, multigraphs, combinatorial embeddings and degeneracy.

mod degeneracy;
mod embedded;
mod multi;
mod simple;

pub use degeneracy::{degeneracy_ordering, DegeneracyOrdering};
pub use embedded::{embed_by_angle, EmbeddedGraph, FaceTrace, FaceWalk};
pub use multi::Multigraph;
pub use simple::SimpleGraph;
