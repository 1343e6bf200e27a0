//! Fans: face enumeration of rational cones, fan assembly with incidence,
//! the fan of the compactified model (lifted cut cones over a window plus
//! the complete slice fan of vertex cut cones), and the two descriptions of
//! the fan of a face with their equality certificate.

use crate::cut::{cut_polytope, qualifying_set};
use crate::kit::{CellFace, KitComplex};
use crate::FansError;
use lattice_core::{dot, lex_cmp, vec_sub, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeSet;
use voronoi_geometry::{saturation_lattice, Cone};

/// Which lattice a cone lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// ℝf₀ ⊕ X∨_ℝ: the lifted space with the distinguished height ray.
    LiftedDual,
    /// X∨_ℝ.
    Dual,
    /// X(Δ)∨_ℝ for a face Δ, in the coordinates of its saturation basis.
    FaceDual,
}

/// A rational polyhedral cone tagged with its ambient lattice. The rays are
/// primitive integer vectors; the cone is strongly convex exactly when its
/// lineality part is empty.
#[derive(Debug, Clone)]
pub struct RationalCone {
    pub ambient: Ambient,
    pub cone: Cone,
}

/// Intersection of two cones in the same space.
pub fn intersect_cones(dim: usize, a: &Cone, b: &Cone) -> Cone {
    let mut normals: Vec<Vec<BigInt>> = Vec::new();
    for c in [a, b] {
        normals.extend(c.facet_normals.iter().cloned());
        for n in &c.equality_normals {
            normals.push(n.clone());
            normals.push(n.iter().map(|x| -x).collect());
        }
    }
    Cone::from_inequalities(dim, &normals)
}

/// Whether `f` is a face of `c` (inclusively): f ⊆ c and f equals c cut by
/// the facet normals of c tight on f.
pub fn is_face_of(dim: usize, f: &Cone, c: &Cone) -> bool {
    if !c.contains_cone(f) {
        return false;
    }
    let vanishes = |n: &Vec<BigInt>| {
        f.rays.iter().all(|r| dot(n, r).is_zero())
            && f.lineality.iter().all(|l| dot(n, l).is_zero())
    };
    let mut normals: Vec<Vec<BigInt>> = Vec::new();
    normals.extend(c.facet_normals.iter().cloned());
    for n in &c.equality_normals {
        normals.push(n.clone());
        normals.push(n.iter().map(|x| -x).collect());
    }
    for n in c.facet_normals.iter().filter(|n| vanishes(n)) {
        normals.push(n.iter().map(|x| -x).collect());
    }
    Cone::from_inequalities(dim, &normals).eq_cone(f)
}

/// All faces of a cone (itself included): tight ray sets of the facets,
/// closed under intersection; every face is spanned by the extreme rays it
/// contains together with the lineality space.
pub fn cone_faces(dim: usize, c: &Cone) -> Vec<Cone> {
    if dim == 0 {
        return vec![c.clone()];
    }
    let full: BTreeSet<usize> = (0..c.rays.len()).collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    sets.insert(full);
    for n in &c.facet_normals {
        let tight: BTreeSet<usize> = (0..c.rays.len())
            .filter(|&i| dot(n, &c.rays[i]).is_zero())
            .collect();
        sets.insert(tight);
    }
    loop {
        let mut new_sets: Vec<BTreeSet<usize>> = Vec::new();
        for a in &sets {
            for b in &sets {
                let i: BTreeSet<usize> = a.intersection(b).cloned().collect();
                if !sets.contains(&i) {
                    new_sets.push(i);
                }
            }
        }
        if new_sets.is_empty() {
            break;
        }
        sets.extend(new_sets);
    }
    sets.iter()
        .map(|s| {
            let mut gens: Vec<Vec<BigInt>> = s.iter().map(|&i| c.rays[i].clone()).collect();
            for l in &c.lineality {
                gens.push(l.clone());
                gens.push(l.iter().map(|x| -x).collect());
            }
            Cone::from_generators(dim, &gens)
        })
        .collect()
}

/// A finite collection of cones closed under faces, with pairwise
/// intersections along common faces, plus the face incidence.
#[derive(Debug, Clone)]
pub struct Fan {
    pub ambient: Ambient,
    pub dim: usize,
    pub cones: Vec<Cone>,
    /// Indices of the maximal cones (not a proper subcone of any other).
    pub maximal: Vec<usize>,
    /// For each cone, the indices of its faces (itself included).
    pub faces_of: Vec<Vec<usize>>,
}

impl Fan {
    /// Closes the input under faces, dedupes, and records incidence.
    pub fn assemble(ambient: Ambient, dim: usize, input: Vec<Cone>) -> Fan {
        let mut cones: Vec<Cone> = Vec::new();
        for c in &input {
            for f in cone_faces(dim, c) {
                if !cones.iter().any(|k| k.eq_cone(&f)) {
                    cones.push(f);
                }
            }
        }
        let maximal = (0..cones.len())
            .filter(|&i| {
                !(0..cones.len()).any(|j| {
                    j != i && cones[j].contains_cone(&cones[i]) && !cones[j].eq_cone(&cones[i])
                })
            })
            .collect();
        let faces_of = (0..cones.len())
            .map(|i| {
                (0..cones.len())
                    .filter(|&j| is_face_of(dim, &cones[j], &cones[i]))
                    .collect()
            })
            .collect();
        Fan { ambient, dim, cones, maximal, faces_of }
    }

    /// Index of a cone equal to the given one.
    pub fn find(&self, c: &Cone) -> Option<usize> {
        self.cones.iter().position(|k| k.eq_cone(c))
    }

    /// Maximal cones containing the point.
    pub fn maximal_containing(&self, x: &[BigRational]) -> Vec<usize> {
        self.maximal
            .iter()
            .copied()
            .filter(|&i| self.cones[i].contains_rational(x))
            .collect()
    }

    /// Maximal cones whose relative interior contains the point.
    pub fn maximal_relint_containing(&self, x: &[BigRational]) -> Vec<usize> {
        self.maximal
            .iter()
            .copied()
            .filter(|&i| self.cones[i].relint_contains_rational(x))
            .collect()
    }

    /// The defining fan property: every pairwise intersection is a common
    /// face and belongs to the collection.
    pub fn check_is_fan(&self) -> bool {
        for i in 0..self.cones.len() {
            for j in (i + 1)..self.cones.len() {
                let meet = intersect_cones(self.dim, &self.cones[i], &self.cones[j]);
                if self.find(&meet).is_none()
                    || !is_face_of(self.dim, &meet, &self.cones[i])
                    || !is_face_of(self.dim, &meet, &self.cones[j])
                {
                    return false;
                }
            }
        }
        true
    }
}

/// The fan of the kit over a window: lifted cut cones at the tiling vertices
/// with |translate|∞ bounded by the window, together with the complete slice
/// fan of vertex cut cones at the central cell, certified against the
/// minimum-normal cones.
#[derive(Debug, Clone)]
pub struct KitFan {
    /// Cones over the cut polytopes at height one, in ℝf₀ ⊕ X∨.
    pub lifted: Fan,
    /// Cut cones of the central cell's vertices, in X∨; the normal fan.
    pub slice: Fan,
    /// Whether every slice cone equals the minimum-normal cone at its vertex
    /// (which certifies that the slice fan is complete).
    pub slice_complete: bool,
}

/// Builds the kit fan. The slice fan is window-independent; the lifted fan
/// collects the cones at all tiling vertices α + Tu with |u|∞ ≤ window.
pub fn fan_of_kit(kit: &KitComplex, window: i64) -> Result<KitFan, FansError> {
    assert!(window >= 0, "window must be nonnegative");
    let g = kit.g();
    let base_vertices = kit.sigma_vertices_int();

    // Slice fan and its completeness certificate.
    let mut slice_max: Vec<Cone> = Vec::new();
    let mut slice_complete = true;
    for alpha in &base_vertices {
        let face = CellFace::from_vertices(vec![alpha
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect()]);
        let cut = cut_polytope(kit, &face);
        let cut_cone = Cone::from_rational_generators(g, &cut.vertices);
        let normals: Vec<Vec<BigInt>> = base_vertices
            .iter()
            .filter(|b| *b != alpha)
            .map(|b| vec_sub(b, alpha))
            .collect();
        let normal_cone = Cone::from_inequalities(g, &normals);
        if !cut_cone.eq_cone(&normal_cone) {
            slice_complete = false;
        }
        if !slice_max.iter().any(|c| c.eq_cone(&cut_cone)) {
            slice_max.push(cut_cone);
        }
    }
    let slice = Fan::assemble(Ambient::Dual, g, slice_max);

    // Lifted fan over the window.
    let mut tiling_vertices: Vec<Vec<BigInt>> = Vec::new();
    for u in lattice_core::box_vectors(g, window.max(0)) {
        let t = kit.t_vec(&u);
        for alpha in &base_vertices {
            let v = lattice_core::vec_add(alpha, &t);
            if !tiling_vertices.contains(&v) {
                tiling_vertices.push(v);
            }
        }
    }
    tiling_vertices.sort_by(|a, b| lex_cmp(a, b));
    let mut lifted_max: Vec<Cone> = Vec::new();
    for x0 in &tiling_vertices {
        let face = CellFace::from_vertices(vec![x0
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect()]);
        let cut = cut_polytope(kit, &face);
        let lifted_gens: Vec<Vec<BigRational>> = cut
            .vertices
            .iter()
            .map(|w| {
                let mut v = vec![BigRational::from(BigInt::from(1))];
                v.extend(w.iter().cloned());
                v
            })
            .collect();
        lifted_max.push(Cone::from_rational_generators(g + 1, &lifted_gens));
    }
    let lifted = Fan::assemble(Ambient::LiftedDual, g + 1, lifted_max);
    Ok(KitFan { lifted, slice, slice_complete })
}

/// The two fans of a face: the projected cut-cone fan and the dual
/// description by corner cones, with their equality certificate.
#[derive(Debug, Clone)]
pub struct FaceFans {
    /// Saturation basis of X(Δ), one column per basis vector.
    pub basis: Vec<Vec<BigInt>>,
    /// Fan of projected cut cones D_Δ(Δ') over the skeleton of Δ.
    pub fan: Fan,
    /// Fan of dualized corner cones σ∨ over the skeleton of Δ.
    pub fan_star: Fan,
    /// Whether D_Δ(Δ') equals σ∨(Δ') for every face Δ' of Δ.
    pub equal: bool,
}

/// Builds both fans of a face in the coordinates of its saturation basis.
/// The face is first translated into the central cell; both constructions
/// are invariant under cell translation.
pub fn fan_of_face(kit: &KitComplex, face: &CellFace) -> Result<FaceFans, FansError> {
    let g = kit.g();
    let star = kit.star_of_face(face);
    if star.is_empty() {
        return Err(FansError::NotAFace);
    }
    // Translate into the central cell.
    let w = &star[0];
    let neg_t: Vec<BigInt> = kit.t_vec(w).iter().map(|c| -c).collect();
    let base_face = kit.face_from_vertices(&face.translate(&neg_t).vertices)?;
    let verts_int = base_face.vertices_int()?;

    if base_face.dim == 0 {
        // X(Δ) = 0: the unique fan of the zero space.
        let zero = Cone {
            dim: 0,
            rays: Vec::new(),
            lineality: Vec::new(),
            facet_normals: Vec::new(),
            equality_normals: Vec::new(),
        };
        let fan = Fan {
            ambient: Ambient::FaceDual,
            dim: 0,
            cones: vec![zero.clone()],
            maximal: vec![0],
            faces_of: vec![vec![0]],
        };
        return Ok(FaceFans { basis: Vec::new(), fan: fan.clone(), fan_star: fan, equal: true });
    }

    let basis = saturation_lattice(&verts_int);
    let k = basis.len();
    debug_assert_eq!(k, base_face.dim);
    let mut bmat = IntMatrix::zero(g, k);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..g {
            bmat.set(i, j, b[i].clone());
        }
    }
    let project = |v: &[BigInt]| -> Vec<BigInt> { basis.iter().map(|b| dot(v, b)).collect() };

    let mut d_cones: Vec<Cone> = Vec::new();
    let mut star_cones: Vec<Cone> = Vec::new();
    let mut equal = true;
    let own_qualifying = qualifying_set(kit, &base_face);
    for v in &own_qualifying {
        debug_assert!(
            project(v).iter().all(|c| c.is_zero()),
            "qualifying points of the face itself must project to zero"
        );
    }
    for sub in kit.face_skeleton(&base_face) {
        // D_Δ(Δ') = j(Cone(Cut(Δ'))).
        let projected: Vec<Vec<BigInt>> = qualifying_set(kit, &sub)
            .iter()
            .map(|v| project(v))
            .collect();
        let d_cone = Cone::from_generators(k, &projected);
        // σ_{Δ'} = Cone(Δ − a : a ∈ Δ') in the basis coordinates.
        let mut corner_gens: Vec<Vec<BigInt>> = Vec::new();
        for a in &sub.vertices {
            let ai: Vec<BigInt> = a.iter().map(|c| c.to_integer()).collect();
            for x in &verts_int {
                let diff = vec_sub(x, &ai);
                let t = lattice_core::solve_in_image(&bmat, &diff)
                    .expect("face difference lies in the saturation lattice");
                corner_gens.push(t);
            }
        }
        let sigma = Cone::from_generators(k, &corner_gens);
        let sigma_dual = sigma.dual();
        if !d_cone.eq_cone(&sigma_dual) {
            equal = false;
        }
        if !d_cones.iter().any(|c| c.eq_cone(&d_cone)) {
            d_cones.push(d_cone);
        }
        if !star_cones.iter().any(|c| c.eq_cone(&sigma_dual)) {
            star_cones.push(sigma_dual);
        }
    }
    let fan = Fan::assemble(Ambient::FaceDual, k, d_cones);
    let fan_star = Fan::assemble(Ambient::FaceDual, k, star_cones);
    Ok(FaceFans { basis, fan, fan_star, equal })
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

    fn g1_kit() -> KitComplex {
        let m = RatMatrix::from_rows_vec(vec![vec![BigRational::from(BigInt::from(2))]]);
        KitComplex::from_form(PolForm::new(m).unwrap()).unwrap()
    }

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|k| BigInt::from(*k)).collect()
    }

    fn br(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|k| BigRational::from(BigInt::from(*k))).collect()
    }

    #[test]
    fn cone_faces_of_quadrant() {
        let c = Cone::from_generators(2, &[iv(&[1, 0]), iv(&[0, 1])]);
        let faces = cone_faces(2, &c);
        assert_eq!(faces.len(), 4); // cone, two rays, origin
        let dims: Vec<usize> = {
            let mut d: Vec<usize> = faces.iter().map(|f| f.cone_dim()).collect();
            d.sort();
            d
        };
        assert_eq!(dims, vec![0, 1, 1, 2]);
    }

    #[test]
    fn halfplane_faces() {
        let c = Cone::from_inequalities(2, &[iv(&[0, 1])]);
        let faces = cone_faces(2, &c);
        assert_eq!(faces.len(), 2); // the halfplane and its boundary line
    }

    #[test]
    fn hexagon_slice_fan_is_complete_with_six_cones() {
        let kit = hexagon_kit();
        let kf = fan_of_kit(&kit, 1).unwrap();
        assert!(kf.slice_complete);
        assert_eq!(kf.slice.maximal.len(), 6);
        assert!(kf.slice.check_is_fan());
        // random-ish rational directions lie in exactly one maximal cone's
        // relative interior or on a shared face
        let dirs = [
            vec![
                BigRational::new(BigInt::from(3), BigInt::from(7)),
                BigRational::new(BigInt::from(-2), BigInt::from(5)),
            ],
            br(&[1, 0]),
            br(&[1, 1]),
            br(&[-5, 3]),
        ];
        for d in &dirs {
            let inside = kf.slice.maximal_relint_containing(d);
            let touching = kf.slice.maximal_containing(d);
            assert!(
                inside.len() == 1 || touching.len() >= 2,
                "direction must be interior to one cone or on a shared face"
            );
        }
    }

    #[test]
    fn g1_slice_fan_is_two_rays() {
        let kit = g1_kit();
        let kf = fan_of_kit(&kit, 1).unwrap();
        assert!(kf.slice_complete);
        assert_eq!(kf.slice.maximal.len(), 2);
        let rays: Vec<Vec<BigInt>> = kf
            .slice
            .maximal
            .iter()
            .map(|&i| kf.slice.cones[i].rays[0].clone())
            .collect();
        assert!(rays.contains(&iv(&[1])));
        assert!(rays.contains(&iv(&[-1])));
    }

    #[test]
    fn lifted_fan_is_a_fan() {
        let kit = g1_kit();
        let kf = fan_of_kit(&kit, 1).unwrap();
        assert!(kf.lifted.check_is_fan());
        // every maximal cone is 2-dimensional and pointed
        for &i in &kf.lifted.maximal {
            assert_eq!(kf.lifted.cones[i].cone_dim(), 2);
            assert!(kf.lifted.cones[i].is_pointed());
        }
    }

    #[test]
    fn edge_face_fan_matches_the_golden_value() {
        let kit = hexagon_kit();
        let face = kit.face_from_vertices(&[br(&[1, 0]), br(&[1, 1])]).unwrap();
        let ff = fan_of_face(&kit, &face).unwrap();
        assert!(ff.equal);
        assert_eq!(ff.basis, vec![iv(&[0, 1])]);
        // {0, ℝ≥0, ℝ≤0} in the basis coordinate
        assert_eq!(ff.fan.cones.len(), 3);
        assert_eq!(ff.fan.maximal.len(), 2);
        let mut rays: Vec<Vec<BigInt>> = ff
            .fan
            .maximal
            .iter()
            .map(|&i| ff.fan.cones[i].rays[0].clone())
            .collect();
        rays.sort();
        assert_eq!(rays, vec![iv(&[-1]), iv(&[1])]);
    }

    #[test]
    fn face_fans_equal_on_every_hexagon_face() {
        let kit = hexagon_kit();
        for face in kit.base_faces() {
            let ff = fan_of_face(&kit, face).unwrap();
            assert!(ff.equal, "fan equality fails on {:?}", face.vertices);
            assert!(ff.fan.check_is_fan());
        }
    }

    #[test]
    fn top_cell_fan_contains_zero_cone_for_itself() {
        let kit = hexagon_kit();
        let top = kit.base_faces().last().unwrap().clone();
        assert_eq!(top.dim, 2);
        let ff = fan_of_face(&kit, &top).unwrap();
        assert!(ff.equal);
        // D of the top face itself is the zero cone
        let projected: Vec<Vec<BigInt>> = qualifying_set(&kit, &top)
            .iter()
            .map(|v| ff.basis.iter().map(|b| dot(v, b)).collect())
            .collect();
        let d_top = Cone::from_generators(2, &projected);
        assert_eq!(d_top.cone_dim(), 0);
        // and the full fan is the complete normal fan: 6 maximal cones
        assert_eq!(ff.fan.maximal.len(), 6);
    }

    #[test]
    fn vertex_face_fan_is_trivial() {
        let kit = hexagon_kit();
        let v = kit.face_from_vertices(&[br(&[1, 1])]).unwrap();
        let ff = fan_of_face(&kit, &v).unwrap();
        assert!(ff.equal);
        assert_eq!(ff.fan.dim, 0);
        assert_eq!(ff.fan.cones.len(), 1);
    }

    #[test]
    fn translated_face_gives_the_same_fan() {
        let kit = hexagon_kit();
        let face = kit.face_from_vertices(&[br(&[1, 1]), br(&[2, 2])]).unwrap();
        let ff = fan_of_face(&kit, &face).unwrap();
        assert!(ff.equal);
        assert_eq!(ff.fan.maximal.len(), 2);
    }
}
