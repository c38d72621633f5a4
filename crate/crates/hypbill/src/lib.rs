//! Combinatorics, growth and symbolic dynamics of hyperbolic `(p, q)`-tilings.
//!
//! The crate is organised in layers:
//!
//! * [`tiling`] builds the tiling as a rotation system, with distance layers,
//!   reflection-consistent edge labels, edge geodesics and zigzags.
//! * [`growth`] gives exact growth series of tiles by distance and their
//!   exponential growth rate.
//! * [`words`] implements the grammar of billiard words and their
//!   vertex-sequence equivalence classes.
//! * [`paths`] works with tiling paths: distances, minimality and
//!   reflection shortening.
//! * [`langrate`] computes growth rates of forbidden-word languages through
//!   de Bruijn transfer graphs.
//! * [`geometry`] realizes the tiling in the hyperbolic plane and traces
//!   geodesic segments back into words.

pub mod error;
pub mod geometry;
pub mod growth;
pub mod langrate;
pub mod paths;
pub mod tiling;
pub mod words;

pub use error::{Error, Result};
pub use tiling::{build_tiling, TilingGraph, TilingParams};
