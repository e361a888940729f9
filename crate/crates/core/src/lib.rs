//! Exact triangle packing and hitting on simple binary matroids.
//!
//! The crate is layered bottom-up:
//!
//! * [`projective`]: GF(2) points, flats, hyperplanes, linear maps and field tables.
//! * [`matroid`]: simple binary matroids, triangles, Fano detection, canonical forms.
//! * [`hypergraph`]: the linear 3-uniform hypergraph of triangles, linear cycles and crowns.
//! * [`graph`]: multigraphs, cycle/cocycle matroids, triads and cosimplification.
//! * [`solver`]: exact weighted packing and hitting numbers by branch and bound.
//! * [`certifier`]: the reduction-rule engine producing `tau <= 2 nu` certificates on
//!   cographic instances.
//! * [`constructions`]: projective geometries, spreads, Bose-Burton geometries.
//! * [`io`]: the matroid and graph text formats.

pub mod certifier;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod matroid;
pub mod projective;
pub mod solver;

pub use error::{Error, Result};
pub use matroid::{BinaryMatroid, Triangle, WeightedMatroid};
pub use projective::{Flat, LinearMap, Point};
