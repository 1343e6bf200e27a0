//! Hilbert bases of rational cones: the unique minimal generating set of
//! C ∩ ℤⁿ for pointed C, and a canonical generating set (saturated lineality
//! basis with both signs plus lifted quotient generators) otherwise.

use lattice_core::{dot, saturation_basis, vec_sub, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use voronoi_geometry::{Cone, Halfspace, LatticePolytope};

/// Irreducible elements of C ∩ ℤⁿ for a pointed cone: every irreducible lies
/// in the slice ℓ(x) ≤ Σℓ(ρᵢ) for ℓ the sum of facet normals (any conic
/// combination with a coefficient ≥ 1 splits off a ray multiple), so the
/// slice lattice points filtered by irreducibility are complete.
fn pointed_hilbert(dim: usize, cone: &Cone) -> Vec<Vec<BigInt>> {
    assert!(cone.lineality.is_empty(), "pointed cone expected");
    if cone.rays.is_empty() {
        return Vec::new();
    }
    let mut ell = vec![BigInt::zero(); dim];
    for n in &cone.facet_normals {
        for i in 0..dim {
            ell[i] += &n[i];
        }
    }
    let l_bound: BigInt = cone.rays.iter().map(|r| dot(&ell, r)).sum();
    let mut slice_hs: Vec<Halfspace> = Vec::new();
    for n in &cone.facet_normals {
        slice_hs.push(Halfspace { normal: n.clone(), offset: BigRational::zero() });
    }
    for n in &cone.equality_normals {
        slice_hs.push(Halfspace { normal: n.clone(), offset: BigRational::zero() });
        slice_hs.push(Halfspace {
            normal: n.iter().map(|x| -x).collect(),
            offset: BigRational::zero(),
        });
    }
    slice_hs.push(Halfspace {
        normal: ell.iter().map(|x| -x).collect(),
        offset: BigRational::from(l_bound),
    });
    let slice = LatticePolytope::from_halfspaces(dim, &slice_hs)
        .expect("slice contains the origin");
    let slice_points: Vec<Vec<BigInt>> = slice
        .lattice_points()
        .into_iter()
        .filter(|p| !p.iter().all(|x| x.is_zero()))
        .collect();
    slice_points
        .iter()
        .filter(|w| {
            !slice_points.iter().any(|v| {
                if v == *w {
                    return false;
                }
                let d = vec_sub(w, v);
                !d.iter().all(|x| x.is_zero()) && cone.contains_int(&d)
            })
        })
        .cloned()
        .collect()
}

/// A canonical finite generating set of the monoid C ∩ ℤⁿ.
///
/// Pointed cones get their Hilbert basis. A cone with lineality L gets
/// ±(saturated lattice basis of L) together with integral lifts of the
/// Hilbert basis of the pointed quotient C/L — each lift lands in C because
/// C + L = C. The full space gets ±(standard basis).
pub fn hilbert_basis(dim: usize, cone: &Cone) -> Vec<Vec<BigInt>> {
    if cone.lineality.is_empty() {
        let mut h = pointed_hilbert(dim, cone);
        h.sort_by(|a, b| lattice_core::lex_cmp(a, b));
        return h;
    }
    let k = cone.lineality.len();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    if k == dim {
        for i in 0..dim {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            gens.push(e.clone());
            gens.push(e.iter().map(|x| -x).collect());
        }
        gens.sort_by(|a, b| lattice_core::lex_cmp(a, b));
        return gens;
    }
    // Saturated lattice basis of the lineality space.
    let mut lmat = IntMatrix::zero(dim, k);
    for (j, v) in cone.lineality.iter().enumerate() {
        for i in 0..dim {
            lmat.set(i, j, v[i].clone());
        }
    }
    let lsat = saturation_basis(&lmat);
    for j in 0..lsat.cols {
        let col = lsat.col(j);
        gens.push(col.iter().map(|x| -x).collect());
        gens.push(col);
    }
    // Unimodular change of coordinates splitting off the lineality: with
    // U·B·V = D in Smith form, the last dim−k coordinates of U·x present
    // ℤⁿ/(L ∩ ℤⁿ).
    let snf = lattice_core::smith_normal_form(&lsat);
    let u = &snf.u;
    let u_inv = lattice_core::int_inverse(u).expect("unimodular");
    let project = |x: &[BigInt]| -> Vec<BigInt> {
        let ux = u.mul_vec(x);
        ux[k..].to_vec()
    };
    let quotient_rays: Vec<Vec<BigInt>> = cone.rays.iter().map(|r| project(r)).collect();
    let qcone = Cone::from_generators(dim - k, &quotient_rays);
    assert!(qcone.is_pointed(), "quotient by the lineality is pointed");
    for h in pointed_hilbert(dim - k, &qcone) {
        // Lift: U⁻¹ applied to (0, …, 0, h); integral since U is unimodular.
        let mut padded = vec![BigRational::zero(); dim];
        for (i, c) in h.iter().enumerate() {
            padded[k + i] = BigRational::from(c.clone());
        }
        let lifted = u_inv.mul_vec(&padded);
        let lift: Vec<BigInt> = lifted
            .iter()
            .map(|q| {
                debug_assert!(q.is_integer());
                q.to_integer()
            })
            .collect();
        debug_assert!(cone.contains_int(&lift), "lift lies in the cone (C + L = C)");
        gens.push(lift);
    }
    gens.sort_by(|a, b| lattice_core::lex_cmp(a, b));
    gens.dedup();
    gens
}
