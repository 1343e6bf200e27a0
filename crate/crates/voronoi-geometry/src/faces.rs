//! Face lattices of polytopes: every nonempty face, with dimensions,
//! vertex incidence, and tight facet sets.

use crate::dd::affine_rank;
use crate::polytope::LatticePolytope;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeSet;

/// One nonempty face, identified by the vertices of the polytope it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Indices into the polytope's vertex list, ascending.
    pub verts: Vec<usize>,
    /// Dimension of the face.
    pub dim: usize,
    /// Indices of the facets containing the face, ascending.
    pub tight: Vec<usize>,
}

/// All nonempty faces, ordered by (dim, verts).
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
}

impl FaceLattice {
    pub fn skeleton(&self, k: usize) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.dim == k).collect()
    }

    /// Numbers |Sk⁰|, |Sk¹|, … up to the top dimension.
    pub fn skeleton_counts(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        (0..=top).map(|k| self.skeleton(k).len()).collect()
    }

    /// Faces of `self` that contain the given face (reverse inclusion).
    pub fn faces_above<'a>(&'a self, f: &Face) -> Vec<&'a Face> {
        self.faces
            .iter()
            .filter(|g| f.verts.iter().all(|v| g.verts.contains(v)))
            .collect()
    }

    /// The vertex coordinates of a face.
    pub fn face_points(&self, poly: &LatticePolytope, f: &Face) -> Vec<Vec<BigRational>> {
        f.verts.iter().map(|&i| poly.vertices[i].clone()).collect()
    }
}

/// Computes the face lattice of a polytope: vertex tight-sets are closed
/// under intersection, and each closed set is one face.
pub fn face_lattice(poly: &LatticePolytope) -> FaceLattice {
    let nv = poly.vertices.len();
    // tight facets per vertex
    let vertex_tight: Vec<BTreeSet<usize>> = poly
        .vertices
        .iter()
        .map(|v| {
            poly.facets
                .iter()
                .enumerate()
                .filter(|(_, h)| h.eval(v).is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    // start from the facet faces and the top face, close under intersection
    let top: BTreeSet<usize> = (0..nv).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(top);
    for fi in 0..poly.facets.len() {
        let fv: BTreeSet<usize> =
            (0..nv).filter(|&v| vertex_tight[v].contains(&fi)).collect();
        if !fv.is_empty() {
            sets.insert(fv);
        }
    }
    loop {
        let snapshot: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        let mut grew = false;
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let meet: BTreeSet<usize> =
                    snapshot[i].intersection(&snapshot[j]).cloned().collect();
                if !meet.is_empty() && sets.insert(meet) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vs| {
            let verts: Vec<usize> = vs.iter().cloned().collect();
            let pts: Vec<Vec<BigRational>> =
                verts.iter().map(|&i| poly.vertices[i].clone()).collect();
            let dim = affine_rank(&pts);
            let tight: Vec<usize> = (0..poly.facets.len())
                .filter(|fi| verts.iter().all(|&v| vertex_tight[v].contains(fi)))
                .collect();
            Face { verts, dim, tight }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.verts).cmp(&(b.dim, &b.verts)));
    FaceLattice { faces }
}
