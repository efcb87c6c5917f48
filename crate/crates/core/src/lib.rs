//! Sigma-colouring toolkit.
//!
//! A Σ-system assigns to every vertex `v` of a graph a subset `Σ(v)` of its
//! neighbourhood; a Σ-colouring is a proper colouring in which, additionally,
//! vertices appearing together in some `Σ(t)` receive distinct colours. The
//! toolkit covers the whole pipeline from conflict-graph construction and
//! discharging-based structure detection on embedded graphs, through the
//! reduction to multigraph list edge-colouring, to matching-polytope
//! certificates, hardcore distributions over matchings and a randomized
//! iterated colouring engine, with exact brute-force oracles at desk scale.

pub mod catalogue;
pub mod clique;
pub mod colouring;
pub mod discharge;
pub mod error;
pub mod graph;
pub mod hardcore;
pub mod io;
pub mod kahn;
pub mod polytope;
pub mod reduction;
pub mod rng;
pub mod scalar;
pub mod sigma;

pub use error::{Error, Result};
pub use graph::{DegeneracyOrdering, EmbeddedGraph, FaceTrace, Multigraph, SimpleGraph};
pub use scalar::Scalar;

/// Vertex identifier. Opaque; orderings are always the numeric order.
pub type Vertex = u32;
/// Edge identifier in a multigraph.
pub type EdgeId = u32;
/// Colour identifier. Opaque integer.
pub type Colour = u32;

/// Exact scalar used whenever a verdict is a certificate.
pub type Rational = num_rational::BigRational;
/// Floating-point scalar used by the fitting and search kernels.
pub type Real = f64;

/// Convenience constructor for exact rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    use num_bigint::BigInt;
    num_rational::BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// ζ*_S = 132 (3 − χ(S)), the structural threshold for a surface of Euler
/// characteristic `chi`.
pub fn zeta_star(chi: i64) -> i64 {
    132 * (3 - chi)
}
