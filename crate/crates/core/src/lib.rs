//! Combinatorial invariants of (±1)-skew polynomial algebras.
//!
//! An algebra `k<x_1..x_n> / (x_i x_j - ε_ij x_j x_i)` with `ε_ij = ±1` is
//! described by its graph (edge `ij` iff `ε_ij = +1`). Isomorphism of the
//! projective spaces these algebras define comes down to switching
//! equivalence of the graphs, and the point variety is a union of coordinate
//! subspaces `P(F)` read off from the facets `F` of a simplicial complex.
//!
//! * [`graph`]: graphs, mutation, switching, switching graphs
//! * [`clique`], [`canon`]: maximal cliques and canonical forms
//! * [`algebra`]: ε-matrices and the doubled algebra
//! * [`complex`]: faces, facets, point varieties, type vectors
//! * [`classify`]: class certificates, enumeration, mutation paths
//! * [`verify`]: exhaustive agreement of the classification criteria

pub mod algebra;
pub mod canon;
pub mod classify;
pub mod clique;
pub mod complex;
mod error;
pub mod graph;
pub mod verify;

pub use algebra::{algebras_isomorphic, doubled_algebra, epsilon_of_graph, graph_of_epsilon, EpsilonMatrix};
pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use classify::{
    certificate, enumerate_classes, mutation_path, switching_equivalent, ClassCatalog, ClassCertificate,
    MutationPath,
};
pub use clique::{clique_number, maximal_cliques};
pub use complex::{
    dimension, faces_bruteforce, facet_families_isomorphic, facets, is_face, point_variety,
    stanley_reisner_generators, type_formula_complete_union, type_vector, FacetFamily, PointVariety,
    TypeVector,
};
pub use error::{Error, Result};
pub use graph::{Graph, Permutation, VertexSet};
pub use verify::{verify_main_theorem, VerifyReport};
