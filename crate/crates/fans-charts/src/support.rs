//! Piecewise-linear support functions of the cells: the function
//! h_v(u) = min over vertices a of Σ(v) of u(a), its strictly convex
//! piece decomposition along the normal fan, and the box construction
//! recovering each face from the support data.

use crate::kit::{CellFace, KitComplex};
use crate::FansError;
use lattice_core::{dot, vec_add};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeSet;
use voronoi_geometry::{Cone, LatticePolytope};

/// The support function of the cell Σ(v), stored as linear pieces over the
/// cones of the (window-independent) normal fan of the central cell.
#[derive(Debug, Clone)]
pub struct SupportFunction {
    /// The translate index v of the cell.
    pub v: Vec<BigInt>,
    /// (domain cone, gradient): on each cone the function is u ↦ u(gradient),
    /// and the gradient is the corresponding vertex of Σ(v).
    pub pieces: Vec<(Cone, Vec<BigInt>)>,
}

impl SupportFunction {
    /// h_v(u) as the minimum of u over the vertices of Σ(v).
    pub fn eval(&self, u: &[BigRational]) -> BigRational {
        self.pieces
            .iter()
            .map(|(_, grad)| {
                grad.iter()
                    .zip(u)
                    .map(|(a, b)| BigRational::from(a.clone()) * b)
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .min()
            .expect("cell has at least one vertex")
    }
}

/// Builds the support function of Σ(v) and validates that it is strictly
/// upper convex across the pieces and continuous along shared ridges.
pub fn support_function(kit: &KitComplex, v: &[BigInt]) -> Result<SupportFunction, FansError> {
    if v.len() != kit.g() {
        return Err(FansError::DimensionMismatch);
    }
    let g = kit.g();
    let t = kit.t_vec(v);
    let base_vertices = kit.sigma_vertices_int();
    let mut pieces: Vec<(Cone, Vec<BigInt>)> = Vec::new();
    for alpha in &base_vertices {
        let normals: Vec<Vec<BigInt>> = base_vertices
            .iter()
            .filter(|b| *b != alpha)
            .map(|b| lattice_core::vec_sub(b, alpha))
            .collect();
        let cone = Cone::from_inequalities(g, &normals);
        pieces.push((cone, vec_add(alpha, &t)));
    }

    // Strict convexity: an interior witness of each piece separates its
    // gradient strictly from every other gradient.
    for (i, (cone, grad)) in pieces.iter().enumerate() {
        let mut witness = vec![BigInt::zero(); g];
        for r in &cone.rays {
            witness = vec_add(&witness, r);
        }
        assert!(
            cone.relint_contains_rational(
                &witness.iter().map(|c| BigRational::from(c.clone())).collect::<Vec<_>>()
            ),
            "ray sum must be interior to the piece"
        );
        for (j, (_, other)) in pieces.iter().enumerate() {
            if i != j {
                assert!(
                    dot(&witness, grad) < dot(&witness, other),
                    "support function must be strictly convex across pieces"
                );
            }
        }
    }
    // Continuity: on each pairwise intersection the two pieces agree.
    for i in 0..pieces.len() {
        for j in (i + 1)..pieces.len() {
            let meet = crate::fan::intersect_cones(g, &pieces[i].0, &pieces[j].0);
            let mut witness = vec![BigInt::zero(); g];
            for r in &meet.rays {
                witness = vec_add(&witness, r);
            }
            assert_eq!(
                dot(&witness, &pieces[i].1),
                dot(&witness, &pieces[j].1),
                "pieces must agree on their shared face"
            );
        }
    }
    Ok(SupportFunction { v: v.to_vec(), pieces })
}

/// The box of a face Δ of Σ(v): all x in Δ + X(Δ)_ℝ with u(x) ≥ h_v(u) for
/// every u, computed as the intersection of Σ(v) with the affine hull of Δ.
/// Recovering Δ itself certifies the support data.
pub fn sf_box(
    kit: &KitComplex,
    v: &[BigInt],
    face: &CellFace,
) -> Result<LatticePolytope, FansError> {
    if v.len() != kit.g() {
        return Err(FansError::DimensionMismatch);
    }
    let star = kit.star_of_face(face);
    if star.is_empty() {
        return Err(FansError::NotAFace);
    }
    if !star.contains(&v.to_vec()) {
        return Err(FansError::FaceNotOnCell);
    }
    let cell = kit.cell(v);
    let poly = face.as_polytope(kit.g());
    let mut halfspaces = cell.facets.clone();
    for eq in &poly.equalities {
        halfspaces.push(eq.clone());
        halfspaces.push(voronoi_geometry::Halfspace {
            normal: eq.normal.iter().map(|c| -c).collect(),
            offset: -eq.offset.clone(),
        });
    }
    for eq in &cell.equalities {
        halfspaces.push(eq.clone());
        halfspaces.push(voronoi_geometry::Halfspace {
            normal: eq.normal.iter().map(|c| -c).collect(),
            offset: -eq.offset.clone(),
        });
    }
    LatticePolytope::from_halfspaces(kit.g(), &halfspaces).ok_or(FansError::FaceNotOnCell)
}

/// Whether the box of the face equals the face itself (as vertex sets).
pub fn sf_box_recovers(kit: &KitComplex, v: &[BigInt], face: &CellFace) -> Result<bool, FansError> {
    let boxed = sf_box(kit, v, face)?;
    let got: BTreeSet<Vec<BigRational>> = boxed.vertices.iter().cloned().collect();
    let want: BTreeSet<Vec<BigRational>> = face.vertices.iter().cloned().collect();
    Ok(got == want)
}
