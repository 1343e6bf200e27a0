//! The nef-compactification kit at level l: the quadratic bound
//! E†ₗ(u) = 2Nl·u(μ(u)), its multiplicative lift ε†ₗ = (ψᵉ)^{2Nl}, and the
//! central cell Σ†ₗ(0) = {x : E†ₗ(u) + u(x) ≥ 0 for all u} computed exactly.

use crate::{extend_to_dual, DegenError, DegenerationDatum, ExtendedDatum};
use lattice_core::RatMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use valued_scalars::ValuedScalar;
use voronoi_geometry::{sigma_zero, LatticePolytope, PolForm, RANK_CAP};

/// Level-l kit derived from a valid degeneration datum.
#[derive(Clone, Debug)]
pub struct NefcKit {
    extended: ExtendedDatum,
    l: u32,
    form: PolForm,
    sigma: LatticePolytope,
}

/// Build the kit: extend to the dual, assemble the quadratic form with
/// matrix Nl(μ + μᵗ), and carve out Σ†ₗ(0).
pub fn nefc_kit(d: &DegenerationDatum, l: u32) -> Result<NefcKit, DegenError> {
    assert!(l >= 1, "level must be positive");
    let extended = extend_to_dual(d)?;
    let g = d.rank();
    let nl = BigRational::from(extended.n() * BigInt::from(l));
    let mu = extended.mu().to_rational();
    let mut m = RatMatrix::zero(g, g);
    for i in 0..g {
        for j in 0..g {
            m.set(i, j, (mu.get(i, j) + mu.get(j, i)) * &nl);
        }
    }
    let form = PolForm::new(m)?;
    let sigma = sigma_zero(&form, RANK_CAP)?;
    Ok(NefcKit { extended, l, form, sigma })
}

impl NefcKit {
    pub fn extended(&self) -> &ExtendedDatum {
        &self.extended
    }

    pub fn level(&self) -> u32 {
        self.l
    }

    /// The quadratic form with E†ₗ(u) = uᵀMu; its translation lattice is
    /// generated by m(v) = 2Mv = 4Nl·μ(v).
    pub fn form(&self) -> &PolForm {
        &self.form
    }

    /// Σ†ₗ(0).
    pub fn sigma_dagger(&self) -> &LatticePolytope {
        &self.sigma
    }

    /// E†ₗ(u) = 2Nl·u(μ(u)) ∈ ℤ.
    pub fn e_dagger(&self, u: &[BigInt]) -> BigInt {
        let v = self.form.eval(u);
        debug_assert!(num_traits::Signed::is_positive(&v) || u.iter().all(num_traits::Zero::is_zero));
        debug_assert!(num_rational::BigRational::is_integer(&v));
        v.to_integer()
    }

    /// ε†ₗ(u) = ψᵉ(u)^{2Nl}.
    pub fn eps_dagger(&self, u: &[BigInt]) -> ValuedScalar {
        self.extended.psi_e(u).pow_big(&(BigInt::from(2) * self.extended.n() * BigInt::from(self.l)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::IntMatrix;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|k| BigInt::from(*k)).collect()
    }

    #[test]
    fn e_dagger_matches_definition() {
        let d = DegenerationDatum::from_pairing(
            IntMatrix::identity(2),
            &IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]),
        )
        .unwrap();
        let kit = nefc_kit(&d, 2).unwrap();
        let two_nl = BigInt::from(2) * kit.extended().n() * BigInt::from(2);
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let u = bi(&[a, b]);
                let mu_u = kit.extended().mu_image(&u);
                let dot: BigInt = u.iter().zip(&mu_u).map(|(x, y)| x * y).sum();
                assert_eq!(kit.e_dagger(&u), &two_nl * dot);
            }
        }
    }

    #[test]
    fn eps_valuation_is_e_dagger() {
        let d = DegenerationDatum::from_pairing(
            IntMatrix::from_rows(&[vec![2]]),
            &IntMatrix::from_rows(&[vec![2]]),
        )
        .unwrap();
        let kit = nefc_kit(&d, 1).unwrap();
        for a in -3i64..=3 {
            let u = bi(&[a]);
            let val = kit.eps_dagger(&u).valuation().clone();
            assert!(val.is_integer());
            assert_eq!(val.to_integer(), kit.e_dagger(&u));
        }
    }

    #[test]
    fn level_scales_form() {
        let d = DegenerationDatum::from_pairing(
            IntMatrix::identity(1),
            &IntMatrix::from_rows(&[vec![1]]),
        )
        .unwrap();
        let k1 = nefc_kit(&d, 1).unwrap();
        let k3 = nefc_kit(&d, 3).unwrap();
        assert_eq!(k1.e_dagger(&bi(&[5])) * BigInt::from(3), k3.e_dagger(&bi(&[5])));
        assert_eq!(k1.level(), 1);
        assert_eq!(
            k3.form().matrix().get(0, 0),
            &(k1.form().matrix().get(0, 0) * BigRational::from(BigInt::from(3)))
        );
    }
}
