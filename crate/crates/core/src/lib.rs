//! Crystallizations of PL manifolds as edge-colored multigraphs, a mapping
//! torus construction over them, and the invariants used to study it:
//! regular genus, gem-complexity, orientability, fundamental-group
//! presentations and first homology.

pub mod catalog;
pub mod document;
pub mod dot;
pub mod error;
pub mod genus;
pub mod graph;
pub mod group;
pub mod iso;
pub mod reproduce;
pub mod snf;
pub mod torus;

pub use catalog::{CatalogEntry, ClassBehavior, Family, SurfaceKind};
pub use error::{Error, Result};
pub use genus::{
    gem_complexity_bound, genus_for_permutation, lower_bounds_4manifold, min_regular_genus, CyclicPermutation,
    GenusReport, HalfInteger,
};
pub use graph::{Bipartiteness, ColoredGraph, GraphBuilder};
pub use group::{first_homology, fundamental_group, AbelianInvariants, GroupPresentation};
pub use iso::{find_shift_isomorphisms, is_isomorphic, Isomorphism, ShiftIsomorphism};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use torus::{build_mapping_torus, classify_orientability, induced_shift_isomorphism, OrientabilityReport, TorusBuild};
pub use document::{decode, encode, GraphDocument};
pub use dot::export_dot;
pub use reproduce::{reproduce, ReproductionRow, Theorem};
