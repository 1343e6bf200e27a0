//! The stratification of the compactified model: classes of complex faces
//! modulo the translation lattice, their closure order, component flags,
//! and the valuation-vector specialization rule that picks the stratum of
//! a point from its cut-polytope membership.

use crate::cut::cut_polytope;
use crate::kit::{CellFace, KitComplex};
use crate::FansError;
use lattice_core::{box_vectors, vec_add};
use num_bigint::BigInt;
use num_rational::BigRational;

/// One stratum class of the model.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub class_id: usize,
    /// Representative face, a face of the central cell.
    pub rep: CellFace,
    /// Dimension of the representative face.
    pub cell_dim: usize,
    /// Stratum dimension: face dimension plus the abelian dimension.
    pub dim: usize,
    /// Whether the stratum is dense in an irreducible component.
    pub is_component: bool,
    /// Class ids of the strata contained in this stratum's closure
    /// (itself included): exactly the classes of the faces of `rep`.
    pub closure: Vec<usize>,
}

/// The full stratification: face classes modulo translation, the component
/// count of the closed fiber, and the abelian shift.
#[derive(Debug, Clone)]
pub struct Stratification {
    pub strata: Vec<Stratum>,
    /// Number of irreducible components of the closed fiber.
    pub components: BigInt,
    pub dim_a: u32,
}

impl Stratification {
    /// Number of classes of each face dimension, indexed 0..=g.
    pub fn class_counts(&self, g: usize) -> Vec<usize> {
        let mut counts = vec![0usize; g + 1];
        for s in &self.strata {
            counts[s.cell_dim] += 1;
        }
        counts
    }

    /// Alternating sum of class counts; zero for a torus quotient.
    pub fn euler_characteristic(&self, g: usize) -> i64 {
        self.class_counts(g)
            .iter()
            .enumerate()
            .map(|(q, &c)| if q % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// The class of an arbitrary face of the complex.
    pub fn class_of(&self, kit: &KitComplex, face: &CellFace) -> Result<usize, FansError> {
        let star = kit.star_of_face(face);
        let w = star.first().ok_or(FansError::NotAFace)?;
        let neg_t: Vec<BigInt> = kit.t_vec(w).iter().map(|c| -c).collect();
        let base = face.translate(&neg_t);
        self.strata
            .iter()
            .position(|s| faces_equivalent(kit, &s.rep, &base))
            .ok_or(FansError::NotAFace)
    }
}

/// Whether two faces differ by a lattice translation T·u.
fn faces_equivalent(kit: &KitComplex, a: &CellFace, b: &CellFace) -> bool {
    if a.dim != b.dim || a.vertices.len() != b.vertices.len() {
        return false;
    }
    let ba = a.barycenter();
    let bb = b.barycenter();
    let diff: Vec<BigRational> = bb.iter().zip(&ba).map(|(x, y)| x - y).collect();
    let u = kit.t_inv_vec(&diff);
    if !u.iter().all(|c| c.is_integer()) {
        return false;
    }
    let ui: Vec<BigInt> = u.iter().map(|c| c.to_integer()).collect();
    &a.translate(&kit.t_vec(&ui)) == b
}

/// Groups the faces of the complex into translation classes and records
/// dimensions, component flags, and the closure order.
pub fn stratification(kit: &KitComplex) -> Stratification {
    let g = kit.g();
    let mut reps: Vec<CellFace> = Vec::new();
    let mut class_of_base: Vec<usize> = Vec::new();
    for face in kit.base_faces() {
        match reps.iter().position(|r| faces_equivalent(kit, r, face)) {
            Some(id) => class_of_base.push(id),
            None => {
                reps.push(face.clone());
                class_of_base.push(reps.len() - 1);
            }
        }
    }
    let base_class = |face: &CellFace| -> usize {
        reps.iter()
            .position(|r| faces_equivalent(kit, r, face))
            .expect("every complex face is equivalent to a central-cell face")
    };
    let strata = reps
        .iter()
        .enumerate()
        .map(|(class_id, rep)| {
            let mut closure: Vec<usize> = kit
                .face_skeleton(rep)
                .iter()
                .map(&base_class)
                .collect();
            closure.sort_unstable();
            closure.dedup();
            Stratum {
                class_id,
                rep: rep.clone(),
                cell_dim: rep.dim,
                dim: rep.dim + kit.dim_a as usize,
                is_component: rep.dim == g,
                closure,
            }
        })
        .collect();
    Stratification {
        strata,
        components: kit.components.clone(),
        dim_a: kit.dim_a,
    }
}

/// Finds the unique face of the complex whose cut polytope's relative
/// interior contains the given valuation vector. Total on rational input:
/// the relative interiors of the cut polytopes partition the dual space.
pub fn specialize(kit: &KitComplex, cutlog: &[BigRational]) -> Result<CellFace, FansError> {
    let g = kit.g();
    if cutlog.len() != g {
        return Err(FansError::DimensionMismatch);
    }
    // Cut polytopes are the rescaled convex hulls of negated stars, so the
    // owning face lies on cells near −cutlog/e(ξ).
    let center: Vec<BigInt> = cutlog
        .iter()
        .map(|c| (-c / &kit.e_xi).round().to_integer())
        .collect();
    for radius in [2i64, 4, 8] {
        let mut seen: Vec<CellFace> = Vec::new();
        let mut hit: Option<CellFace> = None;
        for u in box_vectors(g, radius) {
            let v = vec_add(&center, &u);
            let t = kit.t_vec(&v);
            // every face of Σ(v) is a translated face of the central cell
            for base in kit.base_faces() {
                let face = base.translate(&t);
                if seen.contains(&face) {
                    continue;
                }
                let cut = cut_polytope(kit, &face);
                if cut.relint_contains(cutlog) {
                    assert!(
                        hit.is_none(),
                        "cut-polytope interiors must partition the dual space"
                    );
                    hit = Some(face.clone());
                }
                seen.push(face);
            }
        }
        if let Some(face) = hit {
            return Ok(face);
        }
    }
    Err(FansError::SpecializeFailed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::RatMatrix;
    use num_traits::{One, Zero};
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

    fn br(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|k| BigRational::from(BigInt::from(*k))).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn hexagon_class_counts() {
        let kit = hexagon_kit();
        let s = stratification(&kit);
        assert_eq!(s.class_counts(2), vec![2, 3, 1]);
        assert_eq!(s.euler_characteristic(2), 0);
        assert_eq!(s.components, BigInt::one());
        let top = s.strata.iter().find(|t| t.is_component).unwrap();
        assert_eq!(top.dim, 2);
        assert_eq!(top.closure.len(), 6, "the dense stratum closes over everything");
        for e in s.strata.iter().filter(|t| t.cell_dim == 1) {
            assert_eq!(e.closure.len(), 3, "edge closure: itself plus both vertex classes");
        }
    }

    #[test]
    fn g1_class_counts() {
        let kit = g1_kit();
        let s = stratification(&kit);
        assert_eq!(s.class_counts(1), vec![1, 1]);
        assert_eq!(s.euler_characteristic(1), 0);
    }

    #[test]
    fn two_components_for_index_two_pairing() {
        use degen_data::DegenerationDatum;
        use lattice_core::IntMatrix;
        let phi = IntMatrix::from_rows(&[vec![2]]);
        let b = IntMatrix::from_rows(&[vec![2]]);
        let d = DegenerationDatum::from_pairing(phi, &b).unwrap();
        let kit = degen_data::nefc_kit(&d, 1).unwrap();
        let kc = KitComplex::from_nefc(&kit).unwrap();
        let s = stratification(&kc);
        assert_eq!(s.components, BigInt::from(2));
        assert_eq!(s.class_counts(1), vec![1, 1]);
    }

    #[test]
    fn specialize_hits_the_seven_sample_rows() {
        let kit = hexagon_kit();
        let t_f1: Vec<BigInt> = kit.t_vec(&[BigInt::one(), BigInt::zero()]);
        let t_f2: Vec<BigInt> = kit.t_vec(&[BigInt::zero(), BigInt::one()]);
        let top = CellFace::from_vertices(kit.sigma().vertices.clone());
        let cases: Vec<(Vec<BigRational>, CellFace)> = vec![
            (
                vec![q(-1, 4), q(-1, 4)],
                CellFace::from_vertices(vec![br(&[1, 1])]),
            ),
            (
                vec![q(-1, 2), q(0, 1)],
                CellFace::from_vertices(vec![br(&[1, 0]), br(&[1, 1])]),
            ),
            (
                vec![q(-1, 2), q(-1, 2)],
                CellFace::from_vertices(vec![br(&[1, 1]), br(&[2, 2])]),
            ),
            (
                vec![q(0, 1), q(-1, 2)],
                CellFace::from_vertices(vec![br(&[0, 1]), br(&[1, 1])]),
            ),
            (br(&[0, 0]), top.clone()),
            (br(&[-1, 0]), top.translate(&t_f1)),
            (br(&[0, -1]), top.translate(&t_f2)),
        ];
        for (cutlog, want) in cases {
            let got = specialize(&kit, &cutlog).unwrap();
            assert_eq!(got, want, "specialize({:?})", cutlog);
        }
    }

    #[test]
    fn specialize_top_cells_share_a_class() {
        let kit = hexagon_kit();
        let s = stratification(&kit);
        let ids: Vec<usize> = [br(&[0, 0]), br(&[-1, 0]), br(&[0, -1])]
            .iter()
            .map(|c| {
                let f = specialize(&kit, c).unwrap();
                s.class_of(&kit, &f).unwrap()
            })
            .collect();
        assert_eq!(ids[0], ids[1]);
        assert_eq!(ids[0], ids[2]);
        assert!(s.strata[ids[0]].is_component);
    }

    #[test]
    fn g1_specialize_scans_far_cells() {
        let kit = g1_kit();
        // cut relints: vertex 2 ↦ (−1,0), central top ↦ {0}, Σ(1)=[2,6] ↦ {−1},
        // vertex 6 ↦ (−2,−1), vertex −2 ↦ (0,1)
        let cases: Vec<(BigRational, Vec<Vec<BigRational>>)> = vec![
            (q(-1, 3), vec![br(&[2])]),
            (q(1, 3), vec![br(&[-2])]),
            (q(0, 1), vec![br(&[-2]), br(&[2])]),
            (q(-1, 1), vec![br(&[2]), br(&[6])]),
            (q(-7, 5), vec![br(&[6])]),
        ];
        for (c, verts) in cases {
            let got = specialize(&kit, &[c.clone()]).unwrap();
            assert_eq!(got, CellFace::from_vertices(verts), "specialize({})", c);
        }
    }

    #[test]
    fn specialize_respects_exponent_scale() {
        use degen_data::DegenerationDatum;
        use lattice_core::IntMatrix;
        // e(ξ) = 2: cut polytopes are doubled, so ±1 land strictly inside
        // the vertex cuts instead of on their boundary.
        let phi = IntMatrix::from_rows(&[vec![2]]);
        let b = IntMatrix::from_rows(&[vec![2]]);
        let d = DegenerationDatum::from_pairing(phi, &b).unwrap();
        let kit = degen_data::nefc_kit(&d, 1).unwrap();
        let kc = KitComplex::from_nefc(&kit).unwrap();
        // Σ(0) = [−8, 8], vertex 8 has star {0, 1} and cut 2·[−1, 0] = [−2, 0]
        let got = specialize(&kc, &[q(-1, 1)]).unwrap();
        assert_eq!(got, CellFace::from_vertices(vec![br(&[8])]));
    }
}
