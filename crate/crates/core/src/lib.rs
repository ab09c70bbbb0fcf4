//! Tight cycles in edge-coloured hypergraphs, dense matchings, blow-up
//! transfer to edge-coloured multigraphs, and rainbow absorption.

pub mod blowup;
pub mod cycle;
pub mod dense;
mod decimal;
pub mod error;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod multigraph;
pub mod oracle;
pub mod partite;
pub mod rainbow;
pub mod rng;
pub mod scalar;
pub mod tight;

#[cfg(test)]
mod testutil;

pub use cycle::{TightCycle, TightPath};
pub use error::{Error, Result};
pub use hypergraph::{ColouredKGraph, Colour, Vertex};
pub use multigraph::{DegreeProfile, EdgeColouredMultigraph};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
