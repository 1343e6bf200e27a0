//! Positive-definite rational quadratic forms `E(u) = uᵀ M u` together with
//! the integral translation map `m(v) = 2M·v` they induce.

use crate::VorError;
use lattice_core::{IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A symmetric positive-definite rational form whose doubled matrix is integral.
#[derive(Debug, Clone)]
pub struct PolForm {
    m: RatMatrix,
    translation: IntMatrix,
}

impl PolForm {
    /// Validates symmetry, positive definiteness, and integrality of `2M`.
    pub fn new(m: RatMatrix) -> Result<Self, VorError> {
        if !m.is_square() || !m.is_symmetric() || !m.is_positive_definite() {
            return Err(VorError::NotPositiveDefinite);
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let translation = m
            .scale(&two)
            .to_integer()
            .ok_or(VorError::TranslationNotIntegral)?;
        Ok(PolForm { m, translation })
    }

    /// Builds the form from an integer matrix `M` (so `E(u) = uᵀMu`).
    pub fn from_integer(m: &IntMatrix) -> Result<Self, VorError> {
        Self::new(m.to_rational())
    }

    pub fn rank(&self) -> usize {
        self.m.rows
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.m
    }

    /// The integer matrix of the translation map `v ↦ 2M·v`.
    pub fn translation_matrix(&self) -> &IntMatrix {
        &self.translation
    }

    /// `E(u)` for an integer vector.
    pub fn eval(&self, u: &[BigInt]) -> BigRational {
        let ur: Vec<BigRational> = u.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        self.eval_rational(&ur)
    }

    /// `E(u)` for a rational vector.
    pub fn eval_rational(&self, u: &[BigRational]) -> BigRational {
        assert_eq!(u.len(), self.m.rows, "vector length mismatch");
        let mu = self.m.mul_vec(u);
        u.iter().zip(mu.iter()).map(|(a, b)| a * b).sum()
    }

    /// The translation vector `m(c) = 2M·c`.
    pub fn translate_vec(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.translation.mul_vec(c)
    }

    /// Scales the form by a positive integer `l` (level change `E ↦ l·E`).
    pub fn scaled(&self, l: &BigInt) -> Result<Self, VorError> {
        assert!(l.is_positive(), "scale must be positive");
        Self::new(self.m.scale(&BigRational::from_integer(l.clone())))
    }

    /// A positive lower bound for the smallest eigenvalue of `M`:
    /// `det(M) / G^{g-1}` where `G` is the largest absolute row sum.
    pub fn eigen_floor(&self) -> BigRational {
        let g = self.m.rows;
        let det = self.m.det();
        let mut gmax = BigRational::zero();
        for i in 0..g {
            let row_sum: BigRational = (0..g).map(|j| self.m.get(i, j).abs()).sum();
            if row_sum > gmax {
                gmax = row_sum;
            }
        }
        let mut denom = BigRational::one();
        for _ in 0..g.saturating_sub(1) {
            denom *= &gmax;
        }
        det / denom
    }
}
