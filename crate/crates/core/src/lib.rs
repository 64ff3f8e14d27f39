//! Unstructured mesh management built on a layered DAG of topological points.
//!
//! A [`Plex`] pools cells, facets, edges and vertices into one numbering and
//! stores the covering relation between them (cones and supports). Data is
//! attached to points through a [`Section`]. On top of that sit Gmsh MSH 2.2
//! I/O, cell partitioning, simulated distribution with a star forest and
//! trailing-receives halos, and Reverse Cuthill-McKee renumbering with
//! sparsity pattern analysis.
//!
//! Geometry is generic over the coordinate scalar (see [`Scalar`]); the
//! aliases at the crate root fix it to `f64` or `f32`.

pub mod canonical;
pub mod corpus;
pub mod distribute;
mod error;
pub mod io;
pub mod partition;
pub mod plex;
pub mod renumber;
mod scalar;
pub mod section;
pub mod sparsity;

pub use error::{Error, Result};
pub use plex::{Label, Plex, PointId};
pub use renumber::Permutation;
pub use scalar::Scalar;
pub use section::Section;

pub type RawMesh = io::RawMesh<f64>;
pub type RawMesh32 = io::RawMesh<f32>;
pub type MeshBundle = io::MeshBundle<f64>;
pub type MeshBundle32 = io::MeshBundle<f32>;
pub type Field = section::Field<f64>;
pub type Field32 = section::Field<f32>;
pub type RankLocalMesh = distribute::RankLocalMesh<f64>;
pub type RankLocalMesh32 = distribute::RankLocalMesh<f32>;
