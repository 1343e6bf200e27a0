//! Spaces of theta functions attached to a degeneration datum.
//!
//! For a datum with period pairing of rank `g` and a level `l`, the sections
//! of the `m`-th tensor power of the polarization sheaf form a free module
//! whose rank is computed here in two independent ways (closed formula and
//! direct enumeration).  Each basis element is a formal theta series indexed
//! by a weight class `x`; the series themselves are Laurent-type expansions
//! with exact monomial coefficients, truncated below a valuation cutoff.
//!
//! The crate provides:
//!
//! * [`ThetaSpace`] — dimension counts, the index set of basis elements, and
//!   construction of the formal series ([`ThetaSpace::build_theta`]);
//! * the period actions [`ThetaSpace::apply_sy`] / [`ThetaSpace::apply_delta_u`]
//!   under which the series are invariant up to the documented cocycles;
//! * restriction of a series to a boundary stratum
//!   ([`ThetaSpace::restrict_to_stratum`]) together with the section counts
//!   and very-ampleness bounds for the strata;
//! * a floating-point model of the corresponding complex-analytic theta
//!   functions ([`complex`]) used to cross-check the transformation laws
//!   numerically.

pub mod complex;
pub mod series;
pub mod space;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error(transparent)]
    Degen(#[from] degen_data::DegenError),
    #[error(transparent)]
    Fans(#[from] fans_charts::FansError),
    #[error("weight {0:?} is not decomposable over the cell complex")]
    NotDecomposable(Vec<num_bigint::BigInt>),
    #[error("operation requires a totally degenerate datum (abelian part has dimension {0})")]
    AbelianUnsupported(u32),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0}")]
    InvalidInput(String),
}

pub use complex::{
    complex_theta, sigma_r1, sigma_translation_residual, theta_translation_residual, PeriodData,
};
pub use series::FormalThetaSeries;
pub use space::{stratum_lattice_count, ThetaIndex, ThetaSpace};
