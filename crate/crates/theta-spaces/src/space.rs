//! The space of level-`(l, m)` theta functions attached to a degeneration
//! datum: dimension counts, basis indexing, series construction, the lattice
//! actions, and restriction to boundary strata.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use degen_data::{nefc_kit, DegenerationDatum, NefcKit};
use fans_charts::{CellFace, KitComplex};
use lattice_core::{box_vectors, vec_add, vec_sub, LatticeQuotient};
use valued_scalars::ValuedScalar;

use crate::series::FormalThetaSeries;
use crate::ThetaError;

/// Index of one basis theta function: the weight class representative `x`
/// together with its cell decomposition `x = alpha + T(u)` over the level-`lm`
/// complex and the number of basis elements sharing this weight (greater than
/// one only when the datum has a nontrivial abelian part).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaIndex {
    pub x: Vec<BigInt>,
    pub alpha: Vec<BigInt>,
    pub u: Vec<BigInt>,
    pub multiplicity: BigInt,
}

/// A degeneration datum together with a base level `l >= 1`.
///
/// The space of sections of the `m`-th power of the level-`l` polarization is
/// indexed by lattice weights modulo the sublattice `4N^2·l·m·phi(Y)`; this
/// struct computes those index sets and expands the associated theta series.
pub struct ThetaSpace {
    datum: DegenerationDatum,
    l: u32,
    nefc_l: NefcKit,
    complex_l: KitComplex,
}

impl ThetaSpace {
    /// Attach level `l >= 1` structure to a datum.
    pub fn new(datum: DegenerationDatum, l: u32) -> Result<Self, ThetaError> {
        if l == 0 {
            return Err(ThetaError::InvalidInput("level l must be >= 1".into()));
        }
        let nefc_l = nefc_kit(&datum, l)?;
        let complex_l = KitComplex::from_nefc(&nefc_l)?;
        Ok(ThetaSpace {
            datum,
            l,
            nefc_l,
            complex_l,
        })
    }

    pub fn datum(&self) -> &DegenerationDatum {
        &self.datum
    }

    pub fn level(&self) -> u32 {
        self.l
    }

    /// The level-`l` positivity kit (quadratic data).
    pub fn nefc(&self) -> &NefcKit {
        &self.nefc_l
    }

    /// The level-`l` cell complex; boundary strata passed to
    /// [`ThetaSpace::restrict_to_stratum`] are faces of this complex.
    pub fn complex(&self) -> &KitComplex {
        &self.complex_l
    }

    fn rank(&self) -> usize {
        self.datum.rank()
    }

    fn dim_a(&self) -> u32 {
        self.datum.abelian().dim_a
    }

    /// `4·N^2·l·m`: weights of one space lie in a single class modulo this
    /// multiple of `phi(Y)`.
    pub fn weight_scale(&self, m: u32) -> BigInt {
        let n = self.nefc_l.extended().n();
        BigInt::from(4u32) * n * n * BigInt::from(self.l) * BigInt::from(m)
    }

    /// `4·N·l·m`: the translation scale in the `mu` direction.
    pub fn mu_scale(&self, m: u32) -> BigInt {
        let n = self.nefc_l.extended().n();
        BigInt::from(4u32) * n * BigInt::from(self.l) * BigInt::from(m)
    }

    /// Number of basis elements sharing one weight class:
    /// `h0 · (4N^2·l·m)^{dim_a}`.
    pub fn multiplicity(&self, m: u32) -> BigInt {
        let scale = self.weight_scale(m);
        self.datum.abelian().h0_m.clone() * scale.pow(self.dim_a())
    }

    fn lm_level(&self, m: u32) -> Result<u32, ThetaError> {
        if m == 0 {
            return Err(ThetaError::InvalidInput("tensor level m must be >= 1".into()));
        }
        self.l
            .checked_mul(m)
            .ok_or_else(|| ThetaError::InvalidInput("level l*m overflows".into()))
    }

    fn lm_parts(&self, m: u32) -> Result<(NefcKit, KitComplex), ThetaError> {
        let lm = self.lm_level(m)?;
        let nefc = nefc_kit(&self.datum, lm)?;
        let kit = KitComplex::from_nefc(&nefc)?;
        Ok((nefc, kit))
    }

    /// Closed-formula dimension of the space of level-`(l, m)` sections:
    /// `(4N^2·l·m)^{rank + dim_a} · |X / phi(Y)| · h0`.
    pub fn basis_count(&self, m: u32) -> Result<BigInt, ThetaError> {
        let _ = self.lm_level(m)?;
        let scale = self.weight_scale(m);
        let g_total = self.rank() as u32 + self.dim_a();
        let phi_index = LatticeQuotient::new(self.datum.phi())
            .order()
            .ok_or_else(|| ThetaError::InvalidInput("phi does not have finite index".into()))?;
        Ok(scale.pow(g_total) * phi_index * &self.datum.abelian().h0_m)
    }

    /// The same dimension computed by direct enumeration: the number of
    /// weight classes `X / (4N^2·l·m)·phi(Y)` counted one by one, times the
    /// per-class multiplicity.
    pub fn basis_count_enumerated(&self, m: u32) -> Result<BigInt, ThetaError> {
        let _ = self.lm_level(m)?;
        let scale = self.weight_scale(m);
        let quotient = LatticeQuotient::new(&self.datum.phi().scale(&scale));
        let reps = quotient.representatives();
        Ok(BigInt::from(reps.len()) * self.multiplicity(m))
    }

    /// Decompose a weight as `x = alpha + T_{lm}(u)` with `alpha` in the
    /// central cell of the level-`lm` complex and `u` a dual lattice point.
    pub fn decompose(&self, m: u32, x: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>), ThetaError> {
        let (_, kit) = self.lm_parts(m)?;
        self.decompose_in(&kit, x)
    }

    fn decompose_in(
        &self,
        kit_lm: &KitComplex,
        x: &[BigInt],
    ) -> Result<(Vec<BigInt>, Vec<BigInt>), ThetaError> {
        if x.len() != self.rank() {
            return Err(ThetaError::DimensionMismatch {
                expected: self.rank(),
                got: x.len(),
            });
        }
        let xr: Vec<BigRational> = x.iter().map(|c| BigRational::from(c.clone())).collect();
        let star = kit_lm.star_of_points(&[xr]);
        let u = star
            .first()
            .cloned()
            .ok_or_else(|| ThetaError::NotDecomposable(x.to_vec()))?;
        let alpha = vec_sub(x, &kit_lm.t_vec(&u));
        debug_assert!(kit_lm.in_sigma(&alpha));
        Ok((alpha, u))
    }

    /// One [`ThetaIndex`] per weight class of the level-`(l, m)` space, in the
    /// deterministic order produced by the quotient enumeration.
    pub fn indices(&self, m: u32) -> Result<Vec<ThetaIndex>, ThetaError> {
        let scale = self.weight_scale(m);
        let (_, kit_lm) = self.lm_parts(m)?;
        let quotient = LatticeQuotient::new(&self.datum.phi().scale(&scale));
        let multiplicity = self.multiplicity(m);
        let mut out = Vec::new();
        for x in quotient.representatives() {
            let (alpha, u) = self.decompose_in(&kit_lm, &x)?;
            out.push(ThetaIndex {
                x,
                alpha,
                u,
                multiplicity: multiplicity.clone(),
            });
        }
        Ok(out)
    }

    fn require_totally_degenerate(&self) -> Result<(), ThetaError> {
        if self.dim_a() != 0 {
            return Err(ThetaError::AbelianUnsupported(self.dim_a()));
        }
        Ok(())
    }

    /// The coefficient of the `v = u + beta(y)` term:
    /// `eps_l(v)^m · tau_e(v, alpha)`, an exact valued monomial.
    fn term_coefficient(&self, m: u32, v: &[BigInt], alpha: &[BigInt]) -> ValuedScalar {
        let eps = self.nefc_l.eps_dagger(v).pow_big(&BigInt::from(m));
        eps.mul(&self.nefc_l.extended().tau_e(v, alpha))
    }

    /// Expand the theta series of weight class `x` at tensor level `m`,
    /// keeping every term of valuation strictly below `cutoff`.
    ///
    /// The series is indexed by the period lattice: the term at `y` has
    /// weight `x + 4N^2·l·m·phi(y)` and coefficient
    /// `eps_l(u + beta(y))^m · tau_e(u + beta(y), alpha)` where
    /// `x = alpha + 4N·l·m·mu(u)`.  Only totally degenerate data are
    /// supported (positive-dimensional abelian parts contribute opaque
    /// translation bookkeeping with no formal expansion).
    pub fn build_theta(
        &self,
        m: u32,
        x: &[BigInt],
        cutoff: &BigRational,
    ) -> Result<FormalThetaSeries, ThetaError> {
        self.require_totally_degenerate()?;
        if cutoff <= &BigRational::zero() {
            return Err(ThetaError::InvalidInput("cutoff must be positive".into()));
        }
        let (_, kit_lm) = self.lm_parts(m)?;
        let (alpha, u) = self.decompose_in(&kit_lm, x)?;

        let r = self.rank();
        let scale = self.weight_scale(m);
        let radius = self.truncation_radius(m, &u, &alpha, cutoff);
        let mut terms = BTreeMap::new();
        for y in box_vectors(r, radius) {
            let v = vec_add(&u, &self.nefc_l.extended().beta_image(&y));
            let coeff = self.term_coefficient(m, &v, &alpha);
            if coeff.valuation() < cutoff {
                let shift: Vec<BigInt> = self
                    .datum
                    .phi_image(&y)
                    .iter()
                    .map(|c| c * &scale)
                    .collect();
                let weight = vec_add(x, &shift);
                terms.insert(weight, coeff);
            }
        }
        FormalThetaSeries::new(m, terms, cutoff.clone())
    }

    /// Smallest box radius `R` such that every term with `|y|_inf > R` has
    /// valuation at least `cutoff`.
    ///
    /// The valuation of the `y`-term is the positive-definite quadratic
    /// `y^T Q y + ell·y + v0` with `Q = m·beta^T·M_l·beta` (`M_l` the level-`l`
    /// form), `ell = 2m·beta^T·M_l·u + beta^T·alpha`, `v0 >= 0`.  With
    /// `s = ||Q^{-1}||_inf` one has `y^T Q y >= |y|_inf^2 / s`, so the radius
    /// only needs `R^2/s - ||ell||_1·R + v0 >= cutoff` past the parabola
    /// vertex; all bounds are exact rationals.
    fn truncation_radius(
        &self,
        m: u32,
        u: &[BigInt],
        alpha: &[BigInt],
        cutoff: &BigRational,
    ) -> i64 {
        let r = self.rank();
        if r == 0 {
            return 0;
        }
        let beta = self.nefc_l.extended().beta().to_rational();
        let beta_t = self.nefc_l.extended().beta().transpose().to_rational();
        let m_l = self.nefc_l.form().matrix().clone();
        let m_rat = BigRational::from(BigInt::from(m));
        // Q = m * beta^T M_l beta
        let q = beta_t.mul(&m_l).mul(&beta).scale(&m_rat);
        let q_inv = q.inverse().expect("positive definite form is invertible");
        let mut s = BigRational::zero();
        for i in 0..r {
            let row_sum: BigRational = (0..r).map(|j| q_inv.get(i, j).abs()).sum();
            if row_sum > s {
                s = row_sum;
            }
        }
        // ell = 2m * beta^T M_l u + beta^T alpha
        let u_rat: Vec<BigRational> = u.iter().map(|c| BigRational::from(c.clone())).collect();
        let alpha_rat: Vec<BigRational> =
            alpha.iter().map(|c| BigRational::from(c.clone())).collect();
        let two_m = BigRational::from(BigInt::from(2u32)) * &m_rat;
        let part1 = beta_t.mul(&m_l).mul_vec(&u_rat);
        let part2 = beta_t.mul_vec(&alpha_rat);
        let ell_norm: BigRational = (0..r)
            .map(|i| (&part1[i] * &two_m + &part2[i]).abs())
            .sum();
        // v0 = m u^T M_l u + u^T alpha  (nonnegative since alpha lies in the
        // level-lm central cell); a crude lower bound of zero suffices.
        let v0 = BigRational::zero();

        let mut radius = BigInt::zero();
        loop {
            let rho = BigRational::from(radius.clone());
            let value = &rho * &rho / &s - &ell_norm * &rho + &v0;
            if rho >= &s * &ell_norm && &value >= cutoff {
                break;
            }
            radius += 1;
        }
        i64::try_from(&radius).expect("truncation radius fits in i64")
    }

    /// Translate a series by a period lattice vector `y`: weights shift by
    /// `4N^2·l·m·phi(y)` and the coefficient at weight `x` is multiplied by
    /// the exact factor `psi(y)^{4N^2·l·m} · tau(y, x)`.  The theta series
    /// are invariant under this action.
    pub fn apply_sy(
        &self,
        series: &FormalThetaSeries,
        y: &[BigInt],
    ) -> Result<FormalThetaSeries, ThetaError> {
        self.require_totally_degenerate()?;
        if y.len() != self.rank() {
            return Err(ThetaError::DimensionMismatch {
                expected: self.rank(),
                got: y.len(),
            });
        }
        let m = series.level();
        let scale = self.weight_scale(m);
        let psi_pow = self.datum.psi(y)?.pow_big(&scale);
        let shift: Vec<BigInt> = self.datum.phi_image(y).iter().map(|c| c * &scale).collect();
        let transform = |x: &Vec<BigInt>, c: &ValuedScalar| {
            let weight = vec_add(x, &shift);
            let coeff = c.mul(&psi_pow).mul(&self.datum.tau_pair(y, x));
            (weight, coeff)
        };
        self.transformed(series, transform)
    }

    /// Translate a series by a dual vector `u`: weights shift by
    /// `4N·l·m·mu(u)` and the coefficient at weight `x` is multiplied by
    /// `eps_l(u)^m · tau_e(u, x)`.  For `u = beta(y)` this agrees with
    /// [`ThetaSpace::apply_sy`].
    pub fn apply_delta_u(
        &self,
        series: &FormalThetaSeries,
        u: &[BigInt],
    ) -> Result<FormalThetaSeries, ThetaError> {
        self.require_totally_degenerate()?;
        if u.len() != self.rank() {
            return Err(ThetaError::DimensionMismatch {
                expected: self.rank(),
                got: u.len(),
            });
        }
        let m = series.level();
        let mu_scale = self.mu_scale(m);
        let eps_pow = self.nefc_l.eps_dagger(u).pow_big(&BigInt::from(m));
        let shift: Vec<BigInt> = self
            .nefc_l
            .extended()
            .mu_image(u)
            .iter()
            .map(|c| c * &mu_scale)
            .collect();
        let extended = self.nefc_l.extended();
        let transform = |x: &Vec<BigInt>, c: &ValuedScalar| {
            let weight = vec_add(x, &shift);
            let coeff = c.mul(&eps_pow).mul(&extended.tau_e(u, x));
            (weight, coeff)
        };
        self.transformed(series, transform)
    }

    /// Apply a termwise transform, raising the cutoff so that every image
    /// term is stored.  The result is the exact image of the given truncation;
    /// as a truncation of the transformed full series it is complete below
    /// the input cutoff plus the least valuation shift over the weight class.
    fn transformed<F>(
        &self,
        series: &FormalThetaSeries,
        transform: F,
    ) -> Result<FormalThetaSeries, ThetaError>
    where
        F: Fn(&Vec<BigInt>, &ValuedScalar) -> (Vec<BigInt>, ValuedScalar),
    {
        let mut terms = BTreeMap::new();
        let mut cutoff = series.cutoff().clone();
        for (x, c) in series.terms() {
            let (weight, coeff) = transform(x, c);
            let needed = coeff.valuation() + BigRational::one();
            if needed > cutoff {
                cutoff = needed;
            }
            if terms.insert(weight, coeff).is_some() {
                return Err(ThetaError::InvalidInput(
                    "transform collided on weights".into(),
                ));
            }
        }
        FormalThetaSeries::new(series.level(), terms, cutoff)
    }

    /// Restrict a series to the boundary stratum of a face `delta` of the
    /// level-`l` complex: keep exactly the terms whose weight lies in
    /// `m·delta` (coefficients unchanged).
    pub fn restrict_to_stratum(
        &self,
        series: &FormalThetaSeries,
        delta: &CellFace,
    ) -> Result<FormalThetaSeries, ThetaError> {
        self.require_totally_degenerate()?;
        let m = BigInt::from(series.level());
        let dilated = delta.as_polytope(self.rank()).dilate(&m);
        let terms = series
            .terms()
            .iter()
            .filter(|(x, _)| dilated.contains_int(x))
            .map(|(x, c)| (x.clone(), c.clone()))
            .collect();
        FormalThetaSeries::new(series.level(), terms, series.cutoff().clone())
    }

    /// Number of sections supported on the stratum of a face `delta` of the
    /// level-`l` complex at tensor level `m`: the lattice point count of
    /// `m·delta` times the per-class multiplicity.
    pub fn stratum_section_count(&self, delta: &CellFace, m: u32) -> Result<BigInt, ThetaError> {
        let _ = self.lm_level(m)?;
        Ok(stratum_lattice_count(delta, self.rank(), m) * self.multiplicity(m))
    }

    /// Tensor level at which the sheaf is very ample on the stratum of
    /// `delta`: any `m >= max(dim(delta), 1)`.
    pub fn very_ample_bound(&self, delta: &CellFace) -> u32 {
        (delta.dim as u32).max(1)
    }

    /// Tensor level at which the sheaf is very ample on the whole family:
    /// any `m >= 4·(rank + dim_a)`.
    pub fn very_ample_bound_global(&self) -> u32 {
        4 * (self.rank() as u32 + self.dim_a())
    }

    /// Tensor level from which the sheaf is generated by global sections:
    /// any `m >= rank + 1`.
    pub fn base_point_free_bound(&self) -> u32 {
        self.rank() as u32 + 1
    }
}

/// Lattice point count `|m·delta ∩ Z^r|` of the `m`-fold dilation of a face.
pub fn stratum_lattice_count(delta: &CellFace, ambient_dim: usize, m: u32) -> BigInt {
    let dilated = delta.as_polytope(ambient_dim).dilate(&BigInt::from(m));
    BigInt::from(dilated.lattice_points().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use degen_data::AbelianDescriptor;
    use lattice_core::IntMatrix;

    fn v(coords: &[i64]) -> Vec<BigInt> {
        coords.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn space(phi_rows: &[Vec<i64>], b_rows: &[Vec<i64>], l: u32) -> ThetaSpace {
        let phi = IntMatrix::from_rows(phi_rows);
        let b = IntMatrix::from_rows(b_rows);
        let d = DegenerationDatum::from_pairing(phi, &b).expect("valid datum");
        ThetaSpace::new(d, l).expect("valid space")
    }

    #[test]
    fn rank_one_unit_counts() {
        let s = space(&[vec![1]], &[vec![1]], 1);
        assert_eq!(s.basis_count(1).unwrap(), BigInt::from(4));
        assert_eq!(s.basis_count_enumerated(1).unwrap(), BigInt::from(4));
        assert_eq!(s.basis_count(2).unwrap(), BigInt::from(8));
    }

    #[test]
    fn rank_one_doubled_isogeny_counts() {
        // phi = [2], b = [2]: N = 2, |X/phi(Y)| = 2, scale = 4*4*l*m.
        let s = space(&[vec![2]], &[vec![2]], 1);
        assert_eq!(s.basis_count(1).unwrap(), BigInt::from(32));
        assert_eq!(s.basis_count_enumerated(1).unwrap(), BigInt::from(32));
    }

    #[test]
    fn rank_two_unimodular_counts() {
        let s = space(&[vec![1, 0], vec![0, 1]], &[vec![1, 0], vec![0, 1]], 1);
        assert_eq!(s.basis_count(1).unwrap(), BigInt::from(16));
        assert_eq!(s.basis_count_enumerated(1).unwrap(), BigInt::from(16));
    }

    #[test]
    fn rank_two_hexagonal_pairing_counts_agree() {
        // b = [[2,1],[1,2]] has determinant 3, so N = 3 and the class count
        // is (4*9*l*m)^2 * |X/Y| = 36^2 at l = m = 1.
        let s = space(&[vec![1, 0], vec![0, 1]], &[vec![2, 1], vec![1, 2]], 1);
        assert_eq!(s.basis_count(1).unwrap(), BigInt::from(1296));
        assert_eq!(s.basis_count_enumerated(1).unwrap(), BigInt::from(1296));
    }

    #[test]
    fn abelian_part_multiplies_counts_without_enumeration_mismatch() {
        let phi = IntMatrix::from_rows(&[vec![1]]);
        let b = IntMatrix::from_rows(&[vec![1]]);
        let base = DegenerationDatum::from_pairing(phi, &b).unwrap();
        let abelian = AbelianDescriptor {
            dim_a: 1,
            h0_m: BigInt::from(2),
        };
        let d = DegenerationDatum::new(
            base.phi().clone(),
            vec![vec![base.tau_basis(0, 0).clone()]],
            base.psi_signs().to_vec(),
            abelian,
        )
        .unwrap();
        let s = ThetaSpace::new(d, 1).unwrap();
        // (4lm)^{1+1} * 1 * 2 = 32; per-class multiplicity 2 * 4 = 8.
        assert_eq!(s.basis_count(1).unwrap(), BigInt::from(32));
        assert_eq!(s.basis_count_enumerated(1).unwrap(), BigInt::from(32));
        assert_eq!(s.multiplicity(1), BigInt::from(8));
        // Formal expansion is only defined for totally degenerate data.
        assert!(matches!(
            s.build_theta(1, &v(&[0]), &BigRational::from(BigInt::from(10))),
            Err(ThetaError::AbelianUnsupported(1))
        ));
    }

    #[test]
    fn indices_recompose_and_match_count() {
        for (phi, b) in [
            (vec![vec![1i64]], vec![vec![1i64]]),
            (vec![vec![2]], vec![vec![2]]),
        ] {
            let s = space(&phi, &b, 1);
            for m in [1u32, 2] {
                let idx = s.indices(m).unwrap();
                let total: BigInt = idx.iter().map(|i| i.multiplicity.clone()).sum();
                assert_eq!(total, s.basis_count(m).unwrap());
                let (nefc, _) = s.lm_parts(m).unwrap();
                let scale_mu = s.mu_scale(m);
                for i in &idx {
                    // x = alpha + 4 N lm mu(u)
                    let mu_u = nefc.extended().mu_image(&i.u);
                    let t_u: Vec<BigInt> = mu_u.iter().map(|c| c * &scale_mu).collect();
                    assert_eq!(vec_add(&i.alpha, &t_u), i.x);
                }
            }
        }
    }

    #[test]
    fn decompose_errors_on_wrong_dimension() {
        let s = space(&[vec![1]], &[vec![1]], 1);
        assert!(matches!(
            s.decompose(1, &v(&[1, 2])),
            Err(ThetaError::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn build_theta_unit_datum_golden() {
        // rank 1, phi = b = [1], l = m = 1: the class of x = 0 has terms at
        // weights 4y with valuation 2y^2.
        let s = space(&[vec![1]], &[vec![1]], 1);
        let cutoff = BigRational::from(BigInt::from(20));
        let series = s.build_theta(1, &v(&[0]), &cutoff).unwrap();
        // 2y^2 < 20 for |y| <= 3: seven terms.
        assert_eq!(series.len(), 7);
        for y in -3i64..=3 {
            let coeff = series.coefficient(&v(&[4 * y])).expect("term present");
            assert_eq!(
                coeff.valuation(),
                &BigRational::from(BigInt::from(2 * y * y))
            );
            assert_eq!(coeff.sign(), 1);
            assert!(coeff.units().count() == 0, "coefficient is a pure t-power");
        }
        let (x0, c0) = series.leading().unwrap();
        assert_eq!(x0, &v(&[0]));
        assert!(c0.is_one());
    }

    #[test]
    fn build_theta_level_two_valuations() {
        // m = 2 doubles the quadratic part: valuation 4y^2 at weight 8y.
        let s = space(&[vec![1]], &[vec![1]], 1);
        let cutoff = BigRational::from(BigInt::from(20));
        let series = s.build_theta(2, &v(&[0]), &cutoff).unwrap();
        assert_eq!(series.len(), 5);
        for y in -2i64..=2 {
            let coeff = series.coefficient(&v(&[8 * y])).expect("term present");
            assert_eq!(
                coeff.valuation(),
                &BigRational::from(BigInt::from(4 * y * y))
            );
        }
    }

    #[test]
    fn leading_term_is_the_decomposition_coefficient() {
        // On the chart of the decomposition cell u, the order of a term
        // c * w^g is val(c) - u(g); the y = 0 term is the initial one, and
        // strictly so when alpha is interior to the central cell.
        let s = space(&[vec![2]], &[vec![2]], 1);
        let cutoff = BigRational::from(BigInt::from(40));
        for m in [1u32, 2] {
            let (_, kit_lm) = s.lm_parts(m).unwrap();
            for idx in s.indices(m).unwrap() {
                let series = s.build_theta(m, &idx.x, &cutoff).unwrap();
                let expected = s.term_coefficient(m, &idx.u, &idx.alpha);
                if expected.valuation() >= &cutoff {
                    continue;
                }
                let at_x = series.coefficient(&idx.x).expect("y = 0 term present");
                assert_eq!(at_x, &expected);
                let chart_order = |weight: &[BigInt], val: &BigRational| {
                    val - BigRational::from(lattice_core::dot(&idx.u, weight))
                };
                let base = chart_order(&idx.x, expected.valuation());
                let alpha_rat: Vec<BigRational> = idx
                    .alpha
                    .iter()
                    .map(|c| BigRational::from(c.clone()))
                    .collect();
                let interior =
                    kit_lm.minimal_face(&alpha_rat).unwrap().dim == s.rank();
                for (weight, coeff) in series.terms() {
                    let ord = chart_order(weight, coeff.valuation());
                    assert!(ord >= base, "y = 0 term is initial on its chart");
                    if interior && weight != &idx.x {
                        assert!(ord > base, "interior alpha gives a strict gap");
                    }
                }
            }
        }
    }

    #[test]
    fn apply_sy_matches_apply_delta_beta_y() {
        // With b = [2] the lattice actions differ unless the base-level psi
        // and the extension-level eps are mutually consistent.
        let s = space(&[vec![2]], &[vec![2]], 1);
        let cutoff = BigRational::from(BigInt::from(40));
        let series = s.build_theta(1, &v(&[1]), &cutoff).unwrap();
        assert!(series.len() >= 3, "want several terms in play");
        let y = v(&[1]);
        let beta_y = s.nefc().extended().beta_image(&y);
        let via_sy = s.apply_sy(&series, &y).unwrap();
        let via_delta = s.apply_delta_u(&series, &beta_y).unwrap();
        assert_eq!(via_sy.terms(), via_delta.terms());
    }

    #[test]
    fn delta_u_then_minus_u_is_identity_on_terms() {
        let s = space(&[vec![1, 0], vec![0, 1]], &[vec![2, 1], vec![1, 2]], 1);
        let cutoff = BigRational::from(BigInt::from(25));
        let series = s.build_theta(1, &v(&[1, 0]), &cutoff).unwrap();
        let u = v(&[1, -1]);
        let minus_u = v(&[-1, 1]);
        let forward = s.apply_delta_u(&series, &u).unwrap();
        let back = s.apply_delta_u(&forward, &minus_u).unwrap();
        assert_eq!(back.terms(), series.terms());
    }

    #[test]
    fn apply_sy_permutes_terms_of_the_full_series() {
        let s = space(&[vec![1]], &[vec![1]], 1);
        let cutoff = BigRational::from(BigInt::from(20));
        let series = s.build_theta(1, &v(&[0]), &cutoff).unwrap();
        let moved = s.apply_sy(&series, &v(&[1])).unwrap();
        assert_eq!(moved.len(), series.len());
        // Every transformed term is an exact term of the full expansion.
        let big_cutoff = moved.max_valuation().unwrap() + BigRational::one();
        let reference = s.build_theta(1, &v(&[0]), &big_cutoff).unwrap();
        for (x, c) in moved.terms() {
            assert_eq!(reference.coefficient(x), Some(c));
        }
    }

    #[test]
    fn restriction_to_interior_face_keeps_single_term() {
        let s = space(&[vec![1]], &[vec![1]], 1);
        // Level-l central cell is [-2, 2]; x = 1 lies in its interior, so the
        // restriction of its series to that cell is the single y = 0 term.
        let cutoff = BigRational::from(BigInt::from(50));
        let series = s.build_theta(1, &v(&[1]), &cutoff).unwrap();
        assert!(series.len() > 1);
        let xr = vec![BigRational::from(BigInt::from(1))];
        let delta = s.complex().minimal_face(&xr).unwrap();
        let restricted = s.restrict_to_stratum(&series, &delta).unwrap();
        assert_eq!(restricted.len(), 1);
        assert_eq!(
            restricted.leading().unwrap().0,
            &v(&[1]),
            "single surviving term sits at the original weight"
        );
    }

    #[test]
    fn restriction_to_top_cell_counts_class_points() {
        let s = space(&[vec![1]], &[vec![1]], 1);
        let m = 2u32;
        let x = v(&[0]);
        let cutoff = BigRational::from(BigInt::from(10_000));
        let series = s.build_theta(m, &x, &cutoff).unwrap();
        // The origin is interior to the central cell, so its minimal face is
        // the full level-l cell [-2, 2].
        let origin = vec![BigRational::zero()];
        let cell = s.complex().minimal_face(&origin).unwrap();
        assert_eq!(cell.dim, 1);
        let restricted = s.restrict_to_stratum(&series, &cell).unwrap();
        // Weights of the class are 8y; the dilation m*cell = [-4, 4] meets
        // the class only at 0.  Compare with the direct lattice count.
        let dilated = cell.as_polytope(1).dilate(&BigInt::from(m));
        let expected = dilated
            .lattice_points()
            .into_iter()
            .filter(|p| (&p[0] % BigInt::from(8)).is_zero())
            .count();
        assert_eq!(expected, 1);
        assert_eq!(restricted.len(), expected);
    }

    #[test]
    fn stratum_counts_on_unit_rank_one() {
        let s = space(&[vec![1]], &[vec![1]], 1);
        // Central cell [-2, 2]: 5 lattice points at m = 1, 9 at m = 2.
        let origin = vec![BigRational::zero()];
        let cell = s.complex().minimal_face(&origin).unwrap();
        assert_eq!(s.stratum_section_count(&cell, 1).unwrap(), BigInt::from(5));
        assert_eq!(s.stratum_section_count(&cell, 2).unwrap(), BigInt::from(9));
        assert_eq!(s.very_ample_bound(&cell), 1);
        assert_eq!(s.very_ample_bound_global(), 4);
        assert_eq!(s.base_point_free_bound(), 2);
    }

    #[test]
    fn truncation_radius_is_tight_enough() {
        // Larger cutoffs never lose terms: rebuilding with a bigger cutoff
        // reproduces the smaller expansion exactly.
        let s = space(&[vec![2]], &[vec![2]], 1);
        let small = BigRational::from(BigInt::from(15));
        let large = BigRational::from(BigInt::from(60));
        for x in [v(&[0]), v(&[3]), v(&[-5])] {
            let a = s.build_theta(1, &x, &small).unwrap();
            let b = s.build_theta(1, &x, &large).unwrap();
            assert!(b.agrees_below(&a, &small));
            assert!(b.len() >= a.len());
        }
    }
}
