//! The level kit as a cell complex: the central cell, its translates under
//! the even translation lattice of the quadratic bound, exact star and
//! decomposition queries, and faces of arbitrary cells.

use crate::FansError;
use degen_data::NefcKit;
use lattice_core::{lex_cmp, vec_add, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use voronoi_geometry::{face_lattice, FaceLattice, LatticePolytope, PolForm};

/// A face of one cell of the complex, recorded by its vertex coordinates
/// (sorted lexicographically). Faces of the complex are exactly the
/// translates of faces of the central cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellFace {
    /// Vertex coordinates, lexicographically sorted.
    pub vertices: Vec<Vec<BigRational>>,
    /// Affine dimension.
    pub dim: usize,
}

impl CellFace {
    pub fn from_vertices(mut vertices: Vec<Vec<BigRational>>) -> Self {
        vertices.sort();
        vertices.dedup();
        let dim = voronoi_geometry::affine_rank(&vertices);
        CellFace { vertices, dim }
    }

    /// The face as a polytope (with its affine hull recorded as equalities).
    pub fn as_polytope(&self, ambient_dim: usize) -> LatticePolytope {
        LatticePolytope::from_points(ambient_dim, &self.vertices)
    }

    /// Barycenter of the vertex set.
    pub fn barycenter(&self) -> Vec<BigRational> {
        let n = BigRational::from(BigInt::from(self.vertices.len()));
        let d = self.vertices[0].len();
        let mut b = vec![BigRational::zero(); d];
        for v in &self.vertices {
            for i in 0..d {
                b[i] += &v[i];
            }
        }
        for bi in &mut b {
            *bi /= n.clone();
        }
        b
    }

    /// Integer vertex coordinates; errors when a vertex is not integral.
    pub fn vertices_int(&self) -> Result<Vec<Vec<BigInt>>, FansError> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| {
                        if c.is_integer() {
                            Ok(c.to_integer())
                        } else {
                            Err(FansError::NonIntegralCell)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Translate by an integer vector.
    pub fn translate(&self, t: &[BigInt]) -> CellFace {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .zip(t)
                    .map(|(c, ti)| c + BigRational::from(ti.clone()))
                    .collect()
            })
            .collect();
        CellFace { vertices, dim: self.dim }
    }
}

/// The polyhedral complex of a level kit: central cell Σ(0) of the quadratic
/// bound E(u) = uᵀMu, translated cells Σ(v) = Σ(0) + Tv over the even
/// translation lattice T = 2M, together with the exponent scale and the
/// component/abelian bookkeeping of the underlying datum.
#[derive(Debug, Clone)]
pub struct KitComplex {
    form: PolForm,
    sigma: LatticePolytope,
    faces: FaceLattice,
    base_faces: Vec<CellFace>,
    t_inv: RatMatrix,
    g: usize,
    /// Uniform rational rescale applied to all valuation exponents.
    pub e_xi: BigRational,
    /// Number of irreducible components of the closed fiber.
    pub components: BigInt,
    /// Dimension of the abelian part (0 for totally degenerate data).
    pub dim_a: u32,
}

impl KitComplex {
    /// Build the complex directly from a positive quadratic bound. The
    /// exponent scale defaults to 1 and the datum bookkeeping to a totally
    /// degenerate, irreducible one.
    pub fn from_form(form: PolForm) -> Result<Self, FansError> {
        Self::assemble(form, BigRational::one(), BigInt::one(), 0)
    }

    /// Build the complex of a level kit, inheriting its exponent scale,
    /// component count, and abelian dimension.
    pub fn from_nefc(kit: &NefcKit) -> Result<Self, FansError> {
        let ext = kit.extended();
        Self::assemble(
            kit.form().clone(),
            BigRational::from(ext.n().clone()),
            ext.n().clone(),
            ext.base().abelian().dim_a,
        )
    }

    fn assemble(
        form: PolForm,
        e_xi: BigRational,
        components: BigInt,
        dim_a: u32,
    ) -> Result<Self, FansError> {
        let g = form.rank();
        let sigma = voronoi_geometry::sigma_zero(&form, voronoi_geometry::RANK_CAP)?;
        if !sigma.is_integral() {
            return Err(FansError::NonIntegralCell);
        }
        let faces = face_lattice(&sigma);
        let base_faces = faces
            .faces
            .iter()
            .map(|f| CellFace::from_vertices(faces.face_points(&sigma, f)))
            .collect();
        let t = form.translation_matrix().to_rational();
        let t_inv = t.inverse().expect("positive form has invertible translation matrix");
        Ok(KitComplex {
            form,
            sigma,
            faces,
            base_faces,
            t_inv,
            g,
            e_xi,
            components,
            dim_a,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn form(&self) -> &PolForm {
        &self.form
    }

    /// The central cell Σ(0).
    pub fn sigma(&self) -> &LatticePolytope {
        &self.sigma
    }

    /// The face lattice of the central cell.
    pub fn face_lattice(&self) -> &FaceLattice {
        &self.faces
    }

    /// Every face of the central cell, as `CellFace`s ordered by (dim, verts).
    pub fn base_faces(&self) -> &[CellFace] {
        &self.base_faces
    }

    /// T·v for the translation matrix T = 2M.
    pub fn t_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.form.translate_vec(v)
    }

    /// The cell Σ(v) = Σ(0) + Tv.
    pub fn cell(&self, v: &[BigInt]) -> LatticePolytope {
        self.sigma.translate_int(&self.t_vec(v))
    }

    /// E(v) = vᵀMv.
    pub fn e_val(&self, v: &[BigInt]) -> BigRational {
        self.form.eval(v)
    }

    /// Vertices of the central cell as integer vectors.
    pub fn sigma_vertices_int(&self) -> Vec<Vec<BigInt>> {
        self.sigma
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| c.to_integer()).collect())
            .collect()
    }

    /// All v with every given point inside Σ(v). Exact: candidate v range
    /// over the integer points of T⁻¹(p − Σ(0)) for the first point p, a
    /// bounded rational polytope, so no window or cap is involved.
    pub fn star_of_points(&self, points: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
        assert!(!points.is_empty(), "star of nothing");
        assert!(points.iter().all(|p| p.len() == self.g), "point dimension mismatch");
        let p0 = &points[0];
        // Bounding box of T⁻¹(p0 − w) over vertices w of Σ(0).
        let mut lo = vec![BigRational::zero(); self.g];
        let mut hi = vec![BigRational::zero(); self.g];
        let mut first = true;
        for w in &self.sigma.vertices {
            let diff: Vec<BigRational> = p0.iter().zip(w).map(|(a, b)| a - b).collect();
            let v = self.t_inv.mul_vec(&diff);
            for i in 0..self.g {
                if first || v[i] < lo[i] {
                    lo[i] = v[i].clone();
                }
                if first || v[i] > hi[i] {
                    hi[i] = v[i].clone();
                }
            }
            first = false;
        }
        let lo: Vec<BigInt> = lo.iter().map(|q| q.ceil().to_integer()).collect();
        let hi: Vec<BigInt> = hi.iter().map(|q| q.floor().to_integer()).collect();
        let mut out = Vec::new();
        let mut cursor: Vec<BigInt> = lo.clone();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return out;
        }
        loop {
            let t = self.t_vec(&cursor);
            let tr: Vec<BigRational> = t.iter().map(|a| BigRational::from(a.clone())).collect();
            let inside = points.iter().all(|p| {
                let shifted: Vec<BigRational> = p.iter().zip(&tr).map(|(a, b)| a - b).collect();
                self.sigma.contains(&shifted)
            });
            if inside {
                out.push(cursor.clone());
            }
            // advance odometer
            let mut k = self.g;
            loop {
                if k == 0 {
                    out.sort_by(|a, b| lex_cmp(a, b));
                    return out;
                }
                k -= 1;
                cursor[k] += 1;
                if cursor[k] <= hi[k] {
                    break;
                }
                cursor[k] = lo[k].clone();
            }
        }
    }

    /// Star of a face: all v with Δ ⊆ Σ(v).
    pub fn star_of_face(&self, face: &CellFace) -> Vec<Vec<BigInt>> {
        self.star_of_points(&face.vertices)
    }

    /// The unique face of the complex whose relative interior contains `p`.
    pub fn minimal_face(&self, p: &[BigRational]) -> Result<CellFace, FansError> {
        if p.len() != self.g {
            return Err(FansError::DimensionMismatch);
        }
        let star = self.star_of_points(&[p.to_vec()]);
        let w = star.first().ok_or(FansError::SpecializeFailed)?;
        let t = self.t_vec(w);
        let tr: Vec<BigRational> = t.iter().map(|a| BigRational::from(a.clone())).collect();
        let shifted: Vec<BigRational> = p.iter().zip(&tr).map(|(a, b)| a - b).collect();
        for f in &self.faces.faces {
            let pts = self.faces.face_points(&self.sigma, f);
            let poly = LatticePolytope::from_points(self.g, &pts);
            if poly.relint_contains(&shifted) {
                return Ok(CellFace::from_vertices(pts).translate(&t));
            }
        }
        Err(FansError::NotAFace)
    }

    /// Validates that the vertex set is exactly a face of some cell.
    pub fn face_from_vertices(&self, vertices: &[Vec<BigRational>]) -> Result<CellFace, FansError> {
        if vertices.is_empty() || vertices.iter().any(|v| v.len() != self.g) {
            return Err(FansError::DimensionMismatch);
        }
        let candidate = CellFace::from_vertices(vertices.to_vec());
        let found = self.minimal_face(&candidate.barycenter())?;
        if found == candidate {
            Ok(candidate)
        } else {
            Err(FansError::NotAFace)
        }
    }

    /// All faces of a face (itself included), each a face of the complex.
    pub fn face_skeleton(&self, face: &CellFace) -> Vec<CellFace> {
        let poly = face.as_polytope(self.g);
        let lat = face_lattice(&poly);
        lat.faces
            .iter()
            .map(|f| CellFace::from_vertices(lat.face_points(&poly, f)))
            .collect()
    }

    /// The affine distance function D(x) = E(z) + z(γ) for any decomposition
    /// x = γ + Tz with γ ∈ Σ(0); independent of the decomposition chosen
    /// (asserted across the full star).
    pub fn d_value(&self, x: &[BigInt]) -> Result<BigRational, FansError> {
        let xr: Vec<BigRational> = x.iter().map(|a| BigRational::from(a.clone())).collect();
        let star = self.star_of_points(&[xr]);
        let z = star.first().ok_or(FansError::SpecializeFailed)?;
        let value = self.d_at(x, z);
        debug_assert!(
            star.iter().all(|z2| self.d_at(x, z2) == value),
            "distance function must not depend on the decomposition"
        );
        Ok(value)
    }

    fn d_at(&self, x: &[BigInt], z: &[BigInt]) -> BigRational {
        let gamma = lattice_core::vec_sub(x, &self.t_vec(z));
        let mut acc = self.form.eval(z);
        acc += BigRational::from(lattice_core::dot(z, &gamma));
        acc
    }

    /// Lattice points of the central cell.
    pub fn sigma_lattice_points(&self) -> Vec<Vec<BigInt>> {
        self.sigma.lattice_points()
    }

    /// Whether x is a lattice point of the central cell.
    pub fn in_sigma(&self, x: &[BigInt]) -> bool {
        x.len() == self.g && self.sigma.contains_int(x)
    }

    /// Scaled support point α + Tv used by support functionals.
    pub fn support_point(&self, alpha: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        vec_add(alpha, &self.t_vec(v))
    }

    /// T⁻¹·x for the translation matrix T.
    pub fn t_inv_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.t_inv.mul_vec(x)
    }
}

/// Checks the two-cocycle identity D(x + Tz) = D(x) + z(x) + E(z).
pub fn cocycle_identity(kit: &KitComplex, x: &[BigInt], z: &[BigInt]) -> Result<bool, FansError> {
    let shifted = vec_add(x, &kit.t_vec(z));
    let lhs = kit.d_value(&shifted)?;
    let mut rhs = kit.d_value(x)?;
    rhs += BigRational::from(lattice_core::dot(z, x));
    rhs += kit.e_val(z);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::RatMatrix;
    use num_traits::Signed;

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

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|k| BigInt::from(*k)).collect()
    }

    fn br(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|k| BigRational::from(BigInt::from(*k))).collect()
    }

    #[test]
    fn hexagon_cell_and_translation() {
        let kit = hexagon_kit();
        assert_eq!(kit.sigma().vertices.len(), 6);
        assert_eq!(kit.t_vec(&bi(&[1, 0])), bi(&[2, 1]));
        assert_eq!(kit.t_vec(&bi(&[0, 1])), bi(&[1, 2]));
        let counts = kit.face_lattice().skeleton_counts();
        assert_eq!(counts, vec![6, 6, 1]);
    }

    #[test]
    fn hexagon_star_of_vertex() {
        let kit = hexagon_kit();
        // star of (1,1): cells 0, f1, f2
        let star = kit.star_of_points(&[br(&[1, 1])]);
        assert_eq!(star, vec![bi(&[0, 0]), bi(&[0, 1]), bi(&[1, 0])]);
        // star of (1,0): cells 0, f1, f1−f2
        let star = kit.star_of_points(&[br(&[1, 0])]);
        assert_eq!(star, vec![bi(&[0, 0]), bi(&[1, -1]), bi(&[1, 0])]);
    }

    #[test]
    fn hexagon_minimal_faces() {
        let kit = hexagon_kit();
        let v = kit.minimal_face(&br(&[1, 1])).unwrap();
        assert_eq!(v.dim, 0);
        assert_eq!(v.vertices, vec![br(&[1, 1])]);
        let interior = kit
            .minimal_face(&[BigRational::zero(), BigRational::zero()])
            .unwrap();
        assert_eq!(interior.dim, 2);
        // edge interior between (1,0) and (1,1)
        let p = vec![
            BigRational::from(BigInt::from(1)),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        ];
        let e = kit.minimal_face(&p).unwrap();
        assert_eq!(e.dim, 1);
        assert_eq!(e.vertices, vec![br(&[1, 0]), br(&[1, 1])]);
        // point interior to the translated cell Σ(f1) + its edge to Σ(f2)
        let q = vec![
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::new(BigInt::from(3), BigInt::from(2)),
        ];
        let e2 = kit.minimal_face(&q).unwrap();
        assert_eq!(e2.dim, 1);
        assert_eq!(e2.vertices, vec![br(&[1, 1]), br(&[2, 2])]);
    }

    #[test]
    fn face_validation() {
        let kit = hexagon_kit();
        assert!(kit.face_from_vertices(&[br(&[1, 0]), br(&[1, 1])]).is_ok());
        assert!(kit.face_from_vertices(&[br(&[1, 1]), br(&[2, 2])]).is_ok());
        // diagonal of the hexagon is not a face
        assert_eq!(
            kit.face_from_vertices(&[br(&[-1, 0]), br(&[1, 0])]),
            Err(FansError::NotAFace)
        );
    }

    #[test]
    fn d_function_and_cocycle() {
        let kit = hexagon_kit();
        for x in lattice_core::box_vectors(2, 4) {
            let d = kit.d_value(&x).unwrap();
            assert!(!d.is_negative());
            for z in lattice_core::box_vectors(2, 2) {
                assert!(cocycle_identity(&kit, &x, &z).unwrap());
            }
        }
        let kit1 = g1_kit();
        assert_eq!(kit1.d_value(&bi(&[3])).unwrap(), BigRational::from(BigInt::from(1)));
        assert_eq!(kit1.d_value(&bi(&[4])).unwrap(), BigRational::from(BigInt::from(2)));
        assert_eq!(kit1.d_value(&bi(&[5])).unwrap(), BigRational::from(BigInt::from(3)));
    }

    #[test]
    fn nefc_kit_inherits_scale() {
        use degen_data::DegenerationDatum;
        use lattice_core::IntMatrix;
        // g=1, φ=[2], B=[2]: N = 2, two components.
        let phi = IntMatrix::from_rows(&[vec![2]]);
        let b = IntMatrix::from_rows(&[vec![2]]);
        let d = DegenerationDatum::from_pairing(phi, &b).unwrap();
        let kit = degen_data::nefc_kit(&d, 1).unwrap();
        let kc = KitComplex::from_nefc(&kit).unwrap();
        assert_eq!(kc.components, BigInt::from(2));
        assert_eq!(kc.e_xi, BigRational::from(BigInt::from(2)));
        assert_eq!(kc.dim_a, 0);
    }
}
