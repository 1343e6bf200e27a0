//! Rational polyhedral cones with exact dual pairs of representations,
//! face cones of polytope faces, and saturation lattices.

use crate::dd::{halfspace_cone_generators, normalize_ray, rank_int};
use lattice_core::{saturation_basis, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A rational polyhedral cone with both representations.
#[derive(Debug, Clone)]
pub struct Cone {
    pub dim: usize,
    /// Extreme rays modulo lineality (primitive, sorted).
    pub rays: Vec<Vec<BigInt>>,
    /// Basis of the lineality space.
    pub lineality: Vec<Vec<BigInt>>,
    /// Irredundant facet normals: n·x ≥ 0.
    pub facet_normals: Vec<Vec<BigInt>>,
    /// Normals of the linear span: n·x = 0.
    pub equality_normals: Vec<Vec<BigInt>>,
}

fn with_negations(vecs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(2 * vecs.len());
    for v in vecs {
        out.push(v.clone());
        out.push(v.iter().map(|x| -x).collect());
    }
    out
}

impl Cone {
    /// The cone generated by finitely many integer vectors.
    pub fn from_generators(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        let gens: Vec<Vec<BigInt>> = gens
            .iter()
            .filter(|g| !g.iter().all(|x| x.is_zero()))
            .map(|g| lattice_core::primitive_vector(g))
            .collect();
        // {y : g·y ≥ 0 ∀g} is the dual cone; its generators are our H-rep.
        let dual = halfspace_cone_generators(dim, &gens);
        let equality_normals = dual.lineality;
        let facet_normals = dual.rays;
        // Re-derive the canonical V-rep from the H-rep.
        let mut constraints = with_negations(&equality_normals);
        constraints.extend(facet_normals.iter().cloned());
        let vrep = halfspace_cone_generators(dim, &constraints);
        Cone {
            dim,
            rays: vrep.rays,
            lineality: vrep.lineality,
            facet_normals,
            equality_normals,
        }
    }

    /// The cone `{x : n·x ≥ 0 for all n}`.
    pub fn from_inequalities(dim: usize, normals: &[Vec<BigInt>]) -> Self {
        let vrep = halfspace_cone_generators(dim, normals);
        let mut gens = with_negations(&vrep.lineality);
        gens.extend(vrep.rays.iter().cloned());
        let dual = halfspace_cone_generators(dim, &gens);
        Cone {
            dim,
            rays: vrep.rays,
            lineality: vrep.lineality,
            facet_normals: dual.rays,
            equality_normals: dual.lineality,
        }
    }

    /// The rational cone spanned by rational direction vectors.
    pub fn from_rational_generators(dim: usize, gens: &[Vec<BigRational>]) -> Self {
        let int_gens: Vec<Vec<BigInt>> =
            gens.iter().filter_map(|g| normalize_ray(g)).collect();
        Self::from_generators(dim, &int_gens)
    }

    /// The dual cone, by exchanging the two representations.
    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            rays: self.facet_normals.clone(),
            lineality: self.equality_normals.clone(),
            facet_normals: self.rays.clone(),
            equality_normals: self.lineality.clone(),
        }
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.equality_normals.iter().all(|n| lattice_core::dot(n, x).is_zero())
            && self.facet_normals.iter().all(|n| !lattice_core::dot(n, x).is_negative())
    }

    pub fn contains_rational(&self, x: &[BigRational]) -> bool {
        match normalize_ray(x) {
            None => true, // the origin
            Some(v) => self.contains_int(&v),
        }
    }

    /// Relative-interior membership.
    pub fn relint_contains_rational(&self, x: &[BigRational]) -> bool {
        let dot_rat = |n: &[BigInt], x: &[BigRational]| -> BigRational {
            n.iter().zip(x).map(|(a, b)| BigRational::from(a.clone()) * b).sum()
        };
        self.equality_normals.iter().all(|n| dot_rat(n, x).is_zero())
            && self.facet_normals.iter().all(|n| dot_rat(n, x).is_positive())
    }

    /// Dimension of the linear span.
    pub fn cone_dim(&self) -> usize {
        self.dim - rank_int(&self.equality_normals)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_int(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains_int(l) && self.contains_int(&l.iter().map(|x| -x).collect::<Vec<_>>()))
    }

    /// Set equality of cones (mutual containment).
    pub fn eq_cone(&self, other: &Cone) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }
}

/// The face cone `σ_{Δ'} = Cone(Δ − a; a ∈ Δ')` of a face `Δ'` of `Δ`,
/// both given by their vertices.
pub fn face_cone(
    dim: usize,
    delta_verts: &[Vec<BigRational>],
    face_verts: &[Vec<BigRational>],
) -> Cone {
    let mut gens: Vec<Vec<BigRational>> = Vec::new();
    for a in face_verts {
        for v in delta_verts {
            gens.push(v.iter().zip(a).map(|(x, y)| x - y).collect());
        }
    }
    Cone::from_rational_generators(dim, &gens)
}

/// Basis of the saturation `X(Δ)` of the lattice generated by `Δ − Δ`
/// (empty for a point).
pub fn saturation_lattice(verts: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    assert!(!verts.is_empty(), "saturation of the empty polytope");
    let dim = verts[0].len();
    let diffs: Vec<Vec<BigInt>> = verts[1..]
        .iter()
        .map(|v| lattice_core::vec_sub(v, &verts[0]))
        .filter(|d| !d.iter().all(|x| x.is_zero()))
        .collect();
    if diffs.is_empty() {
        return Vec::new();
    }
    // columns of the matrix are the difference vectors
    let mut m = IntMatrix::zero(dim, diffs.len());
    for (j, d) in diffs.iter().enumerate() {
        for i in 0..dim {
            m.set(i, j, d[i].clone());
        }
    }
    let basis = saturation_basis(&m);
    (0..basis.cols).map(|j| basis.col(j)).collect()
}
