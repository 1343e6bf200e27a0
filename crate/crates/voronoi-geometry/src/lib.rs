//! Exact polyhedral computation for Voronoi polytopes of positive-definite
//! rational quadratic forms.

pub mod complex;
pub mod cones;
pub mod semigroup;
pub mod dd;
pub mod faces;
pub mod form;
pub mod polytope;

pub use complex::{
    ceil_sqrt, minimal_scale, sigma_zero, CoveringReport, ItemReport, LemmaReport, VorComplex,
    RANK_CAP,
};
pub use cones::{face_cone, saturation_lattice, Cone};
pub use dd::{affine_rank, Halfspace, HullRep};
pub use faces::{face_lattice, Face, FaceLattice};
pub use form::PolForm;
pub use polytope::LatticePolytope;
pub use semigroup::{semigroup_generation, SemigroupReport};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum VorError {
    #[error("rank cap exceeded")]
    RankCapExceeded,
    #[error("no integral scale ≤ bound")]
    NoIntegralScale,
    #[error("quadratic form must be symmetric positive definite")]
    NotPositiveDefinite,
    #[error("translation lattice not integral")]
    TranslationNotIntegral,
    #[error("constraint box did not stabilize")]
    Unstable,
    #[error("point outside complex window")]
    OutsideWindow,
    #[error("no cell decomposition found: covering violated")]
    CoveringViolated,
}
