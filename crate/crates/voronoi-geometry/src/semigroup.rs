//! Semigroup generation at a vertex: whether the lattice points of
//! `m(Δ−α)` generate the full monoid `Cone(Δ−α) ∩ X`.

use crate::cones::{face_cone, Cone};
use crate::dd::Halfspace;
use crate::polytope::LatticePolytope;
use lattice_core::{dot, vec_sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Outcome of the generation test at one `(Δ, α, m)`.
#[derive(Debug, Clone)]
pub struct SemigroupReport {
    /// Whether the semigroup generated by `m(Δ−α) ∩ X` is all of `Cone(Δ−α) ∩ X`.
    pub generated: bool,
    /// The irreducible elements of `Cone(Δ−α) ∩ X`: every `w ≠ 0` such that
    /// `w − v ∉ C ∩ X` for all `v ∈ C ∩ X ∖ {0, w}`.
    pub primitives: Vec<Vec<BigInt>>,
    /// An irreducible element missing from the generator set, when not generated.
    pub witness: Option<Vec<BigInt>>,
    /// The generator set `m(Δ−α) ∩ X ∖ {0}`.
    pub generators: Vec<Vec<BigInt>>,
    /// Whether the dilated polytope `mΔ` has a lattice point in its relative interior.
    pub interior_nonempty: bool,
}

/// Decides generation of `Cone(Δ−α) ∩ X` by the lattice points of `m(Δ−α)`.
///
/// Irreducibles are complete: every irreducible lies under the linear bound
/// `ℓ(x) ≤ Σ ℓ(ρᵢ)` over the primitive extreme rays `ρᵢ` (a reducibility
/// argument on any conic combination with a coefficient ≥ 1), and the
/// semigroup is everything iff every irreducible is a generator.
pub fn semigroup_generation(
    delta: &LatticePolytope,
    alpha: &[BigInt],
    m: u32,
) -> SemigroupReport {
    assert!(m >= 1, "dilation must be positive");
    let alpha_r: Vec<BigRational> =
        alpha.iter().map(|a| BigRational::from(a.clone())).collect();
    assert!(
        delta.vertices.contains(&alpha_r),
        "alpha must be a vertex of the polytope"
    );
    let dim = delta.dim;
    let cone: Cone = face_cone(dim, &delta.vertices, &[alpha_r.clone()]);
    assert!(cone.is_pointed(), "cone at a vertex is pointed");

    let neg_alpha: Vec<BigInt> = alpha.iter().map(|a| -a).collect();
    let shifted = delta.translate_int(&neg_alpha);
    let dilated = shifted.dilate(&BigInt::from(m));
    let generators: Vec<Vec<BigInt>> = dilated
        .lattice_points()
        .into_iter()
        .filter(|p| !p.iter().all(|x| x.is_zero()))
        .collect();

    let m_delta = delta.dilate(&BigInt::from(m));
    let interior_nonempty = m_delta.lattice_points().iter().any(|p| {
        let pr: Vec<BigRational> = p.iter().map(|a| BigRational::from(a.clone())).collect();
        m_delta.relint_contains(&pr)
    });

    // Point polytope: the cone is {0} and there is nothing to generate.
    if cone.rays.is_empty() {
        return SemigroupReport {
            generated: true,
            primitives: Vec::new(),
            witness: None,
            generators,
            interior_nonempty,
        };
    }

    // ℓ = sum of facet normals is strictly positive on C ∖ {0}.
    let mut ell = vec![BigInt::zero(); dim];
    for n in &cone.facet_normals {
        for i in 0..dim {
            ell[i] += &n[i];
        }
    }
    // Every irreducible satisfies ℓ(x) ≤ Σ ℓ(ρᵢ).
    let l_bound: BigInt = cone.rays.iter().map(|r| dot(&ell, r)).sum();

    // Enumerate the slice {x ∈ C : ℓ(x) ≤ L} as a polytope.
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

    let mut primitives: Vec<Vec<BigInt>> = Vec::new();
    for w in &slice_points {
        let reducible = slice_points.iter().any(|v| {
            if v == w {
                return false;
            }
            let d = vec_sub(w, v);
            if d.iter().all(|x| x.is_zero()) {
                return false;
            }
            cone.contains_int(&d)
        });
        if !reducible {
            primitives.push(w.clone());
        }
    }
    primitives.sort();

    let witness = primitives.iter().find(|p| !generators.contains(p)).cloned();
    SemigroupReport {
        generated: witness.is_none(),
        primitives,
        witness,
        generators,
        interior_nonempty,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn pt(coords: &[i64]) -> Vec<BigRational> {
        coords.iter().map(|&c| q(c)).collect()
    }

    fn iv(coords: &[i64]) -> Vec<BigInt> {
        coords.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn hexagon() -> LatticePolytope {
        LatticePolytope::from_points(
            2,
            &[pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1]), pt(&[-1, 0]), pt(&[0, -1]), pt(&[-1, -1])],
        )
    }

    #[test]
    fn hexagon_vertex_generates_at_two() {
        let rep = semigroup_generation(&hexagon(), &iv(&[1, 0]), 2);
        assert!(rep.generated, "witness: {:?}", rep.witness);
        assert!(!rep.primitives.is_empty());
    }

    #[test]
    fn segment_generates_at_one() {
        let seg = LatticePolytope::from_points(1, &[pt(&[-2]), pt(&[2])]);
        let rep = semigroup_generation(&seg, &iv(&[2]), 1);
        assert!(rep.generated);
        assert_eq!(rep.primitives, vec![iv(&[-1])]);
    }

    #[test]
    fn unimodular_corner_generates_at_one() {
        let rep = semigroup_generation(&hexagon(), &iv(&[1, 0]), 1);
        // Cone(hexagon − m₁) is unimodular, so m = 1 already generates.
        assert!(rep.generated, "witness: {:?}", rep.witness);
        assert_eq!(rep.primitives.len(), 2);
        assert!(rep.interior_nonempty);
    }

    #[test]
    fn reeve_simplex_fails_at_one() {
        // Conv(0, e₁, e₂, (1,1,2)) has only its vertices as lattice points,
        // but (1,1,1) is irreducible in the vertex cone at 0.
        let tet = LatticePolytope::from_points(
            3,
            &[pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 2])],
        );
        let rep = semigroup_generation(&tet, &iv(&[0, 0, 0]), 1);
        assert!(!rep.generated);
        let w = rep.witness.clone().unwrap();
        assert_eq!(w, iv(&[1, 1, 1]));
        assert!(rep.primitives.contains(&w));
        assert!(!rep.generators.contains(&w));
        // At m = 3 = dim the simplex generates (consistent with the bound m ≥ r).
        let rep3 = semigroup_generation(&tet, &iv(&[0, 0, 0]), 3);
        assert!(rep3.generated, "witness: {:?}", rep3.witness);
    }

    #[test]
    fn point_polytope_trivially_generated() {
        let p = LatticePolytope::from_points(2, &[pt(&[4, 4])]);
        let rep = semigroup_generation(&p, &iv(&[4, 4]), 1);
        assert!(rep.generated);
        assert!(rep.primitives.is_empty());
    }
}
