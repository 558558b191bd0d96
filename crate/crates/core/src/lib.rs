//! Signed graph embeddings encoded as quadricell maps.
//!
//! A signed rotation system is turned into a permutation `P` on the four
//! quadricells of every edge. Faces, orientability and Euler genus follow
//! from the orbits of `Pγ`. On top of that sit boundary permutations for a
//! vertex subset, exact and sampled genus distributions, and amalgamation of
//! graphs along shared vertices.

pub mod amalgamation;
pub mod boundary;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod map;
pub mod perm;
pub mod quadricell;
pub mod random;
pub mod rotation;
pub mod verify;

pub use amalgamation::{amalgamate, theorem4_report, Amalgam, AmalgamationSpec, BoundReport};
pub use boundary::{
    boundary, boundary_face_count, boundary_face_count_oracle, boundary_permutations, BoundaryCount,
    BoundaryPermutations, BoundarySet,
};
pub use error::{Error, Result};
pub use graph::{Edge, Sign, SignedGraph};
pub use map::{build_map, orientability, trace_faces, validate_map, EmbeddingSurface, Face, QuadricellMap};
pub use perm::Perm;
pub use quadricell::{End, Quadricell, Side};
pub use random::{genus_distribution, sample_genus, EmbeddingDistribution, Mode, PermutationPartitionPair};
pub use rotation::SignedRotationSystem;
