//! Exact degeneration data for maximally degenerating semiabelian families:
//! the datum (X, Y, φ, τ, ψ) with valued-scalar tables, report-valued
//! validation, the extension of (τ, ψ) to the dual lattice and to X itself,
//! and the level-l nef kit (ε†ₗ, E†ₗ, Σ†ₗ).

mod datum;
mod extend;
mod nefc;
mod validate;

pub use datum::{AbelianDescriptor, DegenerationDatum};
pub use extend::{extend_to_dual, extend_to_x, ExtendedDatum, FullExtension, ZetaTwist};
pub use nefc::{nefc_kit, NefcKit};
pub use validate::{validate, ValidationItem, ValidationReport};

use thiserror::Error;

/// Errors of the degeneration-data layer.
#[derive(Debug, Error)]
pub enum DegenError {
    /// Input tables have inconsistent dimensions or illegal entries.
    #[error("malformed datum: {0}")]
    Shape(String),
    /// Validation failed; the payload lists the failing invariants.
    #[error("invalid degeneration datum: {0}")]
    Invalid(String),
    /// The pairing valuations v_t τ(y_i, x_j) are not all integers, so
    /// β(y) = B(y, ·) does not land in X∨.
    #[error("pairing matrix is not integral")]
    NonIntegralPairing,
    /// τ(y_i, φ(y_i)) has no square root in the scalar group.
    #[error("no square root for ψ at basis index {0}")]
    PsiObstruction(usize),
    #[error("lattice error: {0}")]
    Lattice(#[from] lattice_core::LatticeError),
    #[error("geometry error: {0}")]
    Geometry(#[from] voronoi_geometry::VorError),
    #[error("json: {0}")]
    Json(String),
}
