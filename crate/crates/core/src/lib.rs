//! Braced sphere triangulations: contraction and vertex splitting, reduction
//! to irreducible bases, exhaustive catalogs, (3,4)-sparsity, and numerical
//! rigidity certificates on the hypercylinder and in mixed-norm space.

#![no_std]

extern crate alloc;

pub mod surface;

pub use surface::{edge, Arc, Edge, Face, SurfaceError, Triangulation, Vertex};
pub mod canon;

pub use canon::{are_isomorphic, canonical_code, canonical_form, CanonError, CanonicalCode, CanonicalForm};
pub mod graph;

pub use graph::{find_isomorphism, Graph, GraphError};
pub mod braced;

pub use braced::{
    replay, BracedError, BracedTriangulation, InvariantReport, ReductionStep, ReductionTrace,
};
pub mod enumerate;

pub use enumerate::{find_irreducibles, triangulations_up_to, Catalog, CatalogEntry, EnumError};
pub mod sparsity;

pub use sparsity::{brute_force_34, check_34, SparsityError, SparsityVerdict};
pub mod linalg;

pub use linalg::{kernel_basis, numeric_rank, LinalgError, RankResult};
pub mod hypercyl;
pub mod mixed_norm;
pub mod random;
