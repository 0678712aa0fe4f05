//! Combinatorics of Severi varieties on `E × P¹` and of simply branched
//! covers of a torus.
//!
//! The first half of the crate lists the components of hyperplane sections
//! of generalized Severi varieties ([`degeneration`]) together with the
//! numerics around them ([`profiles`], [`severi`], [`surfaces`],
//! [`dual_graph`]). The second half checks the monodromy side: Hurwitz
//! tuples, invariant lattices and branch-point move orbits ([`monodromy`],
//! [`hurwitz`], [`lattices`]).

pub mod cli;
pub mod degeneration;
pub mod dual_graph;
pub mod hurwitz;
pub mod lattices;
pub mod monodromy;
pub mod profiles;
pub mod severi;
pub mod surfaces;

pub use degeneration::{build_forest, successors_general, successors_simple, DegenerationForest, DegenerationTerm, StopRule};
pub use lattices::Lattice2;
pub use monodromy::{HurwitzTuple, Permutation};
pub use profiles::TangencyProfile;
pub use severi::{KeyMode, SeveriState};
