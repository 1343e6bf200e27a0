//! Smith normal form and the maps derived from a polarization pairing.

use crate::matrix::{IntMatrix, RatMatrix};
use crate::LatticeError;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// U·M·V = D with U, V unimodular and D diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of D: d₁ | d₂ | …, nonnegative, zeros trailing.
    pub divisors: Vec<BigInt>,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Locate the nonzero entry of minimal absolute value in the trailing
/// submatrix starting at (k,k); ties broken by row-major order.
fn min_pivot(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..d.rows {
        for j in k..d.cols {
            if d.get(i, j).is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if d.get(i, j).abs() < d.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Smith normal form by Euclidean reduction with minimal-absolute-value
/// pivoting (row-major tie-break).
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let t = m.rows.min(m.cols);

    for k in 0..t {
        'reduce: loop {
            let Some((pi, pj)) = min_pivot(&d, k) else {
                break 'reduce;
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let pivot = d.get(k, k).clone();
            for i in k + 1..d.rows {
                if !d.get(i, k).is_zero() {
                    let q = d.get(i, k) / &pivot;
                    d.row_sub(i, &q, k);
                    u.row_sub(i, &q, k);
                    if !d.get(i, k).is_zero() {
                        continue 'reduce;
                    }
                }
            }
            for j in k + 1..d.cols {
                if !d.get(k, j).is_zero() {
                    let q = d.get(k, j) / &pivot;
                    d.col_sub(j, &q, k);
                    v.col_sub(j, &q, k);
                    if !d.get(k, j).is_zero() {
                        continue 'reduce;
                    }
                }
            }
            // Pivot now alone in its row and column; enforce that it divides
            // the rest of the trailing submatrix before moving on.
            for i in k + 1..d.rows {
                for j in k + 1..d.cols {
                    if !(d.get(i, j) % &pivot).is_zero() {
                        // Fold row i into row k to expose the bad entry.
                        let minus_one = BigInt::from(-1);
                        d.row_sub(k, &minus_one, i);
                        u.row_sub(k, &minus_one, i);
                        continue 'reduce;
                    }
                }
            }
            break 'reduce;
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }

    let divisors = (0..t).map(|k| d.get(k, k).clone()).collect();
    SnfDecomposition { u, d, v, divisors }
}

/// |ℤ^rows / im(M)| — the product of the elementary divisors.
///
/// Errors with "infinite cokernel" when the image has rank < rows.
pub fn cokernel_index(m: &IntMatrix) -> Result<BigInt, LatticeError> {
    let snf = smith_normal_form(m);
    if snf.rank() < m.rows {
        return Err(LatticeError::InfiniteCokernel);
    }
    Ok(snf.divisors.iter().product())
}

/// The maps β, μ and the index N derived from φ and the valuation matrix B.
#[derive(Clone, Debug)]
pub struct BetaMu {
    /// β: Y → X∨, β(y)(x) = B(y,x); the matrix is Bᵗ in the dual basis.
    pub beta: IntMatrix,
    /// N = |X∨ / β(Y)|.
    pub n: BigInt,
    /// μ = φ ∘ β⁻¹ ∘ (N·id): integral because N·β⁻¹ is the (signed) adjugate.
    pub mu: IntMatrix,
}

/// Derive β, N, μ from φ and B (entries B(y_i, x_j) = v_t τ(y_i, x_j)).
pub fn derive_beta_mu(phi: &IntMatrix, b: &IntMatrix) -> Result<BetaMu, LatticeError> {
    assert!(phi.is_square() && b.is_square(), "phi and B must be square");
    assert_eq!(phi.rows, b.rows, "phi and B must have matching rank");
    let beta = b.transpose();
    if beta.det().is_zero() {
        return Err(LatticeError::DegeneratePairing);
    }
    let n = cokernel_index(&beta)?;
    let beta_inv = beta.to_rational().inverse().expect("nonsingular by the det check");
    let n_rat = num_rational::BigRational::from(n.clone());
    let mu_rat = phi.to_rational().mul(&beta_inv.scale(&n_rat));
    let mu = mu_rat
        .to_integer()
        .expect("N·β⁻¹ is the signed adjugate, hence integral");
    Ok(BetaMu { beta, n, mu })
}

/// Convenience wrapper for RatMatrix-based inverse of an integer matrix.
pub fn int_inverse(m: &IntMatrix) -> Option<RatMatrix> {
    m.to_rational().inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SnfDecomposition {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d, "U·M·V != D");
        assert_eq!(snf.u.det().abs(), BigInt::from(1), "U not unimodular");
        assert_eq!(snf.v.det().abs(), BigInt::from(1), "V not unimodular");
        for w in snf.divisors.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero() && (&w[1] % &w[0]).is_zero(), "chain broken");
            }
        }
        snf
    }

    #[test]
    fn snf_diagonal() {
        let snf = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]));
        assert_eq!(snf.divisors, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn snf_2x2() {
        let snf = check(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]));
        assert_eq!(snf.divisors, vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn snf_identity() {
        let snf = check(&IntMatrix::identity(2));
        assert_eq!(snf.divisors, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn snf_rectangular() {
        let snf = check(&IntMatrix::from_rows(&[vec![4, 6, 8], vec![2, 4, 6]]));
        assert_eq!(snf.rank(), 2);
    }

    #[test]
    fn snf_zero_matrix() {
        let snf = check(&IntMatrix::zero(2, 3));
        assert_eq!(snf.divisors, vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(
            cokernel_index(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(cokernel_index(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
        assert_eq!(cokernel_index(&IntMatrix::from_rows(&[vec![3]])).unwrap(), BigInt::from(3));
    }

    #[test]
    fn cokernel_infinite() {
        let err = cokernel_index(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]])).unwrap_err();
        assert_eq!(err.to_string(), "infinite cokernel");
    }

    #[test]
    fn beta_mu_identity() {
        let bm = derive_beta_mu(&IntMatrix::identity(2), &IntMatrix::identity(2)).unwrap();
        assert_eq!(bm.beta, IntMatrix::identity(2));
        assert_eq!(bm.n, BigInt::from(1));
        assert_eq!(bm.mu, IntMatrix::identity(2));
    }

    #[test]
    fn beta_mu_doubled() {
        let phi = IntMatrix::from_rows(&[vec![2]]);
        let b = IntMatrix::from_rows(&[vec![2]]);
        let bm = derive_beta_mu(&phi, &b).unwrap();
        assert_eq!(bm.beta, IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(bm.n, BigInt::from(2));
        assert_eq!(bm.mu, IntMatrix::from_rows(&[vec![2]]));
    }

    #[test]
    fn beta_mu_degenerate() {
        let phi = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        let err = derive_beta_mu(&phi, &b).unwrap_err();
        assert_eq!(err.to_string(), "degenerate pairing");
    }

    #[test]
    fn beta_mu_rank2() {
        // B = [[2,1],[1,2]], φ = id: N = 3 and μ = 3·β⁻¹ = [[2,-1],[-1,2]].
        let phi = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        let bm = derive_beta_mu(&phi, &b).unwrap();
        assert_eq!(bm.n, BigInt::from(3));
        assert_eq!(bm.mu, IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]));
        // μ∘β = N·φ.
        assert_eq!(bm.mu.mul(&bm.beta), phi.scale(&BigInt::from(3)));
    }
}
