//! Exact integer-lattice linear algebra: dense matrices over ℤ and ℚ,
//! Smith normal form with a deterministic pivot rule, sublattice indices,
//! quotient enumeration, and the derived maps (β, N, μ) of a polarization
//! pairing.

pub mod matrix;
pub mod quotient;
pub mod snf;

pub use matrix::{IntMatrix, RatMatrix};
pub use quotient::{
    box_vectors, content, dot, is_zero_vec, lex_cmp, primitive_vector, saturation_basis,
    solve_in_image, vec_add, vec_scale, vec_sub, LatticeQuotient,
};
pub use snf::{cokernel_index, derive_beta_mu, int_inverse, smith_normal_form, BetaMu, SnfDecomposition};

/// Errors for lattice-level operations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    /// The cokernel ℤⁿ/im(M) is not finite.
    #[error("infinite cokernel")]
    InfiniteCokernel,
    /// β = Bᵗ is singular, so no μ exists.
    #[error("degenerate pairing")]
    DegeneratePairing,
}
