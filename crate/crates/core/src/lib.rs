//! Skeletal snub polyhedra built from the finite regular polyhedra of E³.
//!
//! A snub `S_P(v)` is the orbit of an initial vertex `v`, its base edges and
//! base faces under the combinatorial rotation subgroup `G⁺(P) = ⟨s₁, s₂⟩`.

pub mod analysis;
pub mod catalog;
pub mod converse;
pub mod geometry;
pub mod group;
pub mod snub;

pub use catalog::{lookup, CatalogEntry, FundamentalCone, GeneratorTriple, PolyhedronSpec};
pub use geometry::{Isometry, Vector3};
pub use group::{FiniteGroup, TypeSet};
pub use snub::{build_snub, SkeletalPolyhedron};
