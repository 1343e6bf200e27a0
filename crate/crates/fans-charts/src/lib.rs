//! Polyhedral structure of the degeneration: the translated-cell complex of a
//! level kit, cut polytopes and their cones, the fan of the compactified
//! model, face fans and their dual description, piecewise-linear support
//! functions, coordinate-ring chart presentations of the closed fiber, the
//! stratification by translation classes, the specialization rule for
//! valuation vectors, and the cellular cohomology of the quotient complex.

pub mod chart;
pub mod cohomology;
pub mod cut;
pub mod fan;
pub mod hilbert;
pub mod kit;
pub mod strata;
pub mod support;

pub use chart::{chart_ring, ChartPresentation, ChartRelation};
pub use cohomology::torus_cell_cohomology;
pub use cut::{cut_polytope, qualifying_set, tau_cone, tau_cone_from_inequalities};
pub use fan::{fan_of_face, fan_of_kit, Ambient, FaceFans, Fan, KitFan, RationalCone};
pub use hilbert::hilbert_basis;
pub use kit::{cocycle_identity, CellFace, KitComplex};
pub use strata::{specialize, stratification, Stratification, Stratum};
pub use support::{sf_box, sf_box_recovers, support_function, SupportFunction};

/// Errors for fan, chart, and stratification operations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FansError {
    /// The central cell has a non-integral vertex; the combinatorial layer
    /// requires an integral cell complex.
    #[error("central cell is not integral")]
    NonIntegralCell,
    /// The base point is not a lattice point of the central cell.
    #[error("point is not a lattice point of the central cell")]
    PointOutsideCell,
    /// The vertex set does not describe a face of any cell of the complex.
    #[error("not a face of the cell complex")]
    NotAFace,
    /// The face is not a face of the requested cell.
    #[error("face does not lie on the requested cell")]
    FaceNotOnCell,
    /// Specialization exhausted its search radius without locating a cut
    /// polytope whose relative interior contains the input.
    #[error("specialization search did not terminate")]
    SpecializeFailed,
    /// The datum has a positive-dimensional abelian part where a totally
    /// degenerate one is required.
    #[error("abelian part unsupported")]
    AbelianUnsupported,
    /// An underlying geometric computation failed.
    #[error(transparent)]
    Vor(#[from] voronoi_geometry::VorError),
    /// Dimension mismatch between an argument and the complex.
    #[error("dimension mismatch")]
    DimensionMismatch,
}
