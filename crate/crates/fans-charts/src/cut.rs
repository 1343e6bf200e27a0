//! Cut polytopes of faces of the complex and the rational cones they span
//! at height one: the building blocks of the compactified model's fan.

use crate::fan::{Ambient, RationalCone};
use crate::kit::{CellFace, KitComplex};
use crate::FansError;
use lattice_core::{vec_add, vec_sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use voronoi_geometry::{Cone, LatticePolytope};

/// The qualifying dual points of a face: all v with Δ ⊆ Σ(−v), i.e. the
/// negated star. Always nonempty, and exactly the vertex set of the cut
/// polytope (before the exponent scale).
pub fn qualifying_set(kit: &KitComplex, face: &CellFace) -> Vec<Vec<BigInt>> {
    kit.star_of_face(face)
        .into_iter()
        .map(|v| v.iter().map(|c| -c).collect())
        .collect()
}

/// Cut(τ_Δ) = Conv(e·v : Δ ⊆ Σ(−v)), computed by exact enumeration of the
/// translates containing Δ (no window is involved; the candidate range is a
/// certified bounded box).
pub fn cut_polytope(kit: &KitComplex, face: &CellFace) -> LatticePolytope {
    let pts: Vec<Vec<BigRational>> = qualifying_set(kit, face)
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| BigRational::from(c.clone()) * &kit.e_xi)
                .collect()
        })
        .collect();
    LatticePolytope::from_points(kit.g(), &pts)
}

/// The cone τ over the base point α + Tu: all (v₀, v) with v₀ ≥ 0 and
/// e·(D(y) − D(α+Tu))·v₀ + v(y − α − Tu) ≥ 0 for every lattice y. Equals the
/// cone over the cut polytope of the minimal face containing α + Tu, lifted
/// to height one (the v₀ = 0 slice collapses to the origin because the cut
/// polytope is bounded).
pub fn tau_cone(
    kit: &KitComplex,
    alpha: &[BigInt],
    u: &[BigInt],
) -> Result<RationalCone, FansError> {
    if !kit.in_sigma(alpha) {
        return Err(FansError::PointOutsideCell);
    }
    if u.len() != kit.g() {
        return Err(FansError::DimensionMismatch);
    }
    let x0 = vec_add(alpha, &kit.t_vec(u));
    let x0r: Vec<BigRational> = x0.iter().map(|c| BigRational::from(c.clone())).collect();
    let face = kit.minimal_face(&x0r)?;
    let cut = cut_polytope(kit, &face);
    let lifted: Vec<Vec<BigRational>> = cut
        .vertices
        .iter()
        .map(|w| {
            let mut v = vec![BigRational::from(BigInt::from(1))];
            v.extend(w.iter().cloned());
            v
        })
        .collect();
    let cone = Cone::from_rational_generators(kit.g() + 1, &lifted);
    Ok(RationalCone { ambient: Ambient::LiftedDual, cone })
}

/// The same cone assembled directly from the defining inequalities, with y
/// ranging over α + Tu + (the lattice points of the threefold dilated central
/// cell). Used as an independent oracle for `tau_cone`.
pub fn tau_cone_from_inequalities(
    kit: &KitComplex,
    alpha: &[BigInt],
    u: &[BigInt],
) -> Result<RationalCone, FansError> {
    if !kit.in_sigma(alpha) {
        return Err(FansError::PointOutsideCell);
    }
    let g = kit.g();
    let x0 = vec_add(alpha, &kit.t_vec(u));
    let d0 = kit.d_value(&x0)?;
    let three = kit.sigma().dilate(&BigInt::from(3));
    let mut normals: Vec<Vec<BigInt>> = Vec::new();
    // v₀ ≥ 0
    let mut e0 = vec![BigInt::zero(); g + 1];
    e0[0] = BigInt::from(1);
    normals.push(e0);
    for w in three.lattice_points() {
        let y = vec_add(&x0, &w);
        let dy = kit.d_value(&y)?;
        let coeff = (&dy - &d0) * &kit.e_xi;
        let den = coeff.denom().clone();
        debug_assert!(den.is_positive());
        let mut n = vec![coeff.numer().clone()];
        for c in vec_sub(&y, &x0) {
            n.push(c * &den);
        }
        if n.iter().all(|c| c.is_zero()) {
            continue;
        }
        normals.push(n);
    }
    let cone = Cone::from_inequalities(g + 1, &normals);
    Ok(RationalCone { ambient: Ambient::LiftedDual, cone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::RatMatrix;
    use num_traits::One;
    use voronoi_geometry::PolForm;

    fn hexagon_kit() -> KitComplex {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let one = BigRational::one();
        let m = RatMatrix::from_rows_vec(vec![
            vec![one.clone(), half.clone()],
            vec![half, one],
        ]);
        KitComplex::from_form(PolForm::new(m).unwrap()).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|k| BigInt::from(*k)).collect()
    }

    fn br(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|k| BigRational::from(BigInt::from(*k))).collect()
    }

    fn face_of(kit: &KitComplex, verts: &[&[i64]]) -> CellFace {
        let pts: Vec<Vec<BigRational>> = verts.iter().map(|v| br(v)).collect();
        kit.face_from_vertices(&pts).unwrap()
    }

    fn vertex_set(p: &LatticePolytope) -> Vec<Vec<BigRational>> {
        let mut v = p.vertices.clone();
        v.sort();
        v
    }

    #[test]
    fn hexagon_cut_polytopes_match_the_seven_rows() {
        let kit = hexagon_kit();
        // vertex (1,1): Conv(0, −f1, −f2)
        let cut = cut_polytope(&kit, &face_of(&kit, &[&[1, 1]]));
        assert_eq!(vertex_set(&cut), vec![br(&[-1, 0]), br(&[0, -1]), br(&[0, 0])]);
        // half-open edge ⟨m1, −m3⟩: Conv(0, −f1)
        let cut = cut_polytope(&kit, &face_of(&kit, &[&[1, 0], &[1, 1]]));
        assert_eq!(vertex_set(&cut), vec![br(&[-1, 0]), br(&[0, 0])]);
        // edge between the two translated cells: Conv(−f1, −f2)
        let cut = cut_polytope(&kit, &face_of(&kit, &[&[1, 1], &[2, 2]]));
        assert_eq!(vertex_set(&cut), vec![br(&[-1, 0]), br(&[0, -1])]);
        // edge ⟨−m3, m2⟩: Conv(0, −f2)
        let cut = cut_polytope(&kit, &face_of(&kit, &[&[0, 1], &[1, 1]]));
        assert_eq!(vertex_set(&cut), vec![br(&[0, -1]), br(&[0, 0])]);
        // top cells
        let top = face_of(&kit, &[&[1, 0], &[0, 1], &[1, 1], &[-1, 0], &[0, -1], &[-1, -1]]);
        let cut = cut_polytope(&kit, &top);
        assert_eq!(vertex_set(&cut), vec![br(&[0, 0])]);
        let topf1 = CellFace::from_vertices(top.vertices.clone()).translate(&bi(&[2, 1]));
        let cut = cut_polytope(&kit, &topf1);
        assert_eq!(vertex_set(&cut), vec![br(&[-1, 0])]);
        let topf2 = CellFace::from_vertices(top.vertices.clone()).translate(&bi(&[1, 2]));
        let cut = cut_polytope(&kit, &topf2);
        assert_eq!(vertex_set(&cut), vec![br(&[0, -1])]);
    }

    #[test]
    fn in_text_vertex_cuts() {
        let kit = hexagon_kit();
        // vertex m1 = (1,0): Conv(0, −f1, −f1+f2)
        let cut = cut_polytope(&kit, &face_of(&kit, &[&[1, 0]]));
        assert_eq!(
            vertex_set(&cut),
            vec![br(&[-1, 0]), br(&[-1, 1]), br(&[0, 0])]
        );
    }

    #[test]
    fn tau_cone_agrees_with_inequality_oracle() {
        let kit = hexagon_kit();
        for alpha in kit.sigma_lattice_points() {
            for u in lattice_core::box_vectors(2, 1) {
                let exact = tau_cone(&kit, &alpha, &u).unwrap();
                let oracle = tau_cone_from_inequalities(&kit, &alpha, &u).unwrap();
                assert!(
                    exact.cone.eq_cone(&oracle.cone),
                    "tau cone mismatch at alpha={alpha:?} u={u:?}"
                );
            }
        }
    }

    #[test]
    fn tau_cone_outside_cell_errors() {
        let kit = hexagon_kit();
        assert_eq!(
            tau_cone(&kit, &bi(&[2, 0]), &bi(&[0, 0])).unwrap_err(),
            FansError::PointOutsideCell
        );
    }

    #[test]
    fn cut_polytope_monotone_under_face_inclusion() {
        let kit = hexagon_kit();
        let edge = face_of(&kit, &[&[1, 0], &[1, 1]]);
        let vertex = face_of(&kit, &[&[1, 1]]);
        let cut_edge = cut_polytope(&kit, &edge);
        let cut_vertex = cut_polytope(&kit, &vertex);
        // smaller face ⇒ larger cut polytope
        for v in &cut_edge.vertices {
            assert!(cut_vertex.contains(v));
        }
    }
}
