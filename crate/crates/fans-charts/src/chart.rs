//! Local chart presentations at lattice points of the central cell: one
//! monomial generator per Hilbert-basis element of each star-cell cone, with
//! product relations inside a common cone and annihilation otherwise.

use crate::hilbert::hilbert_basis;
use crate::kit::KitComplex;
use crate::FansError;
use lattice_core::{dot, vec_add};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use voronoi_geometry::Cone;

/// A relation between two chart generators, by index into `generators`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartRelation {
    /// gᵢ·gⱼ = t^{t_exp} w^{weight}: both weights lie in a common star cone.
    Product {
        i: usize,
        j: usize,
        t_exp: BigRational,
        weight: Vec<BigInt>,
    },
    /// gᵢ·gⱼ = 0: the weights share no star cone.
    Annihilation { i: usize, j: usize },
}

/// A monomial presentation of the completed local ring at a lattice point α
/// of the central cell, twisted by u.
#[derive(Debug, Clone)]
pub struct ChartPresentation {
    pub alpha: Vec<BigInt>,
    pub u: Vec<BigInt>,
    /// Whether α is interior to the central cell (single star cell, so the
    /// chart is a full Laurent ring).
    pub interior: bool,
    /// (t-exponent, X-weight) per generator, sorted by weight.
    pub generators: Vec<(BigRational, Vec<BigInt>)>,
    pub relations: Vec<ChartRelation>,
    /// The star of α: all v with α ∈ Σ(v).
    pub star: Vec<Vec<BigInt>>,
}

/// Computes the chart presentation at α twisted by u. The point must be a
/// lattice point of the central cell.
pub fn chart_ring(
    kit: &KitComplex,
    alpha: &[BigInt],
    u: &[BigInt],
) -> Result<ChartPresentation, FansError> {
    let g = kit.g();
    if alpha.len() != g || u.len() != g {
        return Err(FansError::DimensionMismatch);
    }
    if !kit.in_sigma(alpha) {
        return Err(FansError::PointOutsideCell);
    }
    let alpha_rat: Vec<BigRational> = alpha.iter().map(|c| BigRational::from(c.clone())).collect();
    let star = kit.star_of_points(std::slice::from_ref(&alpha_rat));
    debug_assert!(!star.is_empty());
    let interior = star.len() == 1;

    // One cone per star cell: the cone of the cell as seen from α.
    let mut cones: Vec<Cone> = Vec::new();
    for v in &star {
        let cell = kit.cell(v);
        let gens: Vec<Vec<BigRational>> = cell
            .vertices
            .iter()
            .map(|w| {
                w.iter()
                    .zip(&alpha_rat)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        cones.push(Cone::from_rational_generators(g, &gens));
    }

    // Generators: Hilbert bases of the star cones, deduped by weight, with
    // t-exponent e(ξ)(v+u)(x); the exponent is independent of which star
    // cell contributed the weight.
    let mut by_weight: BTreeMap<Vec<BigInt>, BigRational> = BTreeMap::new();
    for (v, cone) in star.iter().zip(&cones) {
        for x in hilbert_basis(g, cone) {
            let exp = kit.e_xi.clone()
                * BigRational::from(dot(v, &x) + dot(u, &x));
            match by_weight.get(&x) {
                Some(prev) => assert_eq!(
                    prev, &exp,
                    "t-exponent must not depend on the contributing star cell"
                ),
                None => {
                    by_weight.insert(x, exp);
                }
            }
        }
    }
    let generators: Vec<(BigRational, Vec<BigInt>)> = by_weight
        .into_iter()
        .map(|(w, e)| (e, w))
        .collect();

    // Relations: a product survives exactly when some star cone contains
    // both factors; its exponent is then read off in that cone's cell.
    let mut relations: Vec<ChartRelation> = Vec::new();
    for i in 0..generators.len() {
        for j in (i + 1)..generators.len() {
            let xi = &generators[i].1;
            let xj = &generators[j].1;
            let common = star
                .iter()
                .zip(&cones)
                .find(|(_, c)| c.contains_int(xi) && c.contains_int(xj));
            match common {
                Some((v, _)) => {
                    let weight = vec_add(xi, xj);
                    let t_exp = kit.e_xi.clone()
                        * BigRational::from(dot(v, &weight) + dot(u, &weight));
                    debug_assert_eq!(
                        t_exp,
                        &generators[i].0 + &generators[j].0,
                        "product exponent must be additive"
                    );
                    relations.push(ChartRelation::Product { i, j, t_exp, weight });
                }
                None => relations.push(ChartRelation::Annihilation { i, j }),
            }
        }
    }

    Ok(ChartPresentation {
        alpha: alpha.to_vec(),
        u: u.to_vec(),
        interior,
        generators,
        relations,
        star,
    })
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

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|k| BigInt::from(*k)).collect()
    }

    fn rat(k: i64) -> BigRational {
        BigRational::from(BigInt::from(k))
    }

    #[test]
    fn hexagon_vertex_chart_has_three_generators_no_annihilation() {
        let kit = hexagon_kit();
        let p = chart_ring(&kit, &iv(&[1, 1]), &iv(&[0, 0])).unwrap();
        assert!(!p.interior);
        assert_eq!(p.star.len(), 3);
        assert_eq!(
            p.generators,
            vec![
                (rat(0), iv(&[-1, 0])),
                (rat(0), iv(&[0, -1])),
                (rat(1), iv(&[1, 1])),
            ]
        );
        assert_eq!(p.relations.len(), 3);
        for r in &p.relations {
            assert!(matches!(r, ChartRelation::Product { .. }));
        }
        // the two coordinate generators multiply without any t factor
        assert!(p.relations.contains(&ChartRelation::Product {
            i: 0,
            j: 1,
            t_exp: rat(0),
            weight: iv(&[-1, -1]),
        }));
    }

    #[test]
    fn g1_vertex_chart_is_nodal() {
        let kit = g1_kit();
        let p = chart_ring(&kit, &iv(&[2]), &iv(&[0])).unwrap();
        assert!(!p.interior);
        assert_eq!(p.star, vec![iv(&[0]), iv(&[1])]);
        assert_eq!(p.generators, vec![(rat(0), iv(&[-1])), (rat(1), iv(&[1]))]);
        assert_eq!(p.relations, vec![ChartRelation::Annihilation { i: 0, j: 1 }]);
    }

    #[test]
    fn interior_chart_is_laurent() {
        let kit = hexagon_kit();
        let p = chart_ring(&kit, &iv(&[0, 0]), &iv(&[0, 0])).unwrap();
        assert!(p.interior);
        assert_eq!(p.star, vec![iv(&[0, 0])]);
        assert_eq!(p.generators.len(), 4); // ±e₁, ±e₂
        for (e, _) in &p.generators {
            assert!(e.is_zero());
        }
        // all products survive: the chart is a Laurent ring
        for r in &p.relations {
            assert!(matches!(r, ChartRelation::Product { .. }));
        }
    }

    #[test]
    fn interior_charts_agree_across_interior_points() {
        // doubled central cell so that several interior lattice points exist
        let m = RatMatrix::from_rows_vec(vec![vec![BigRational::from(BigInt::from(4))]]);
        let kit = KitComplex::from_form(PolForm::new(m).unwrap()).unwrap();
        // Σ(0) = [-4, 4]
        let u = iv(&[3]);
        let a = chart_ring(&kit, &iv(&[0]), &u).unwrap();
        let b = chart_ring(&kit, &iv(&[2]), &u).unwrap();
        assert!(a.interior && b.interior);
        assert_eq!(a.generators, b.generators);
        assert_eq!(a.relations, b.relations);
    }

    #[test]
    fn twist_shifts_exponents() {
        let kit = g1_kit();
        let p = chart_ring(&kit, &iv(&[2]), &iv(&[5])).unwrap();
        // exponents e(ξ)(v+u)(x): (0+5)(−1) = −5 and (1+5)(1) = 6
        assert_eq!(p.generators, vec![(rat(-5), iv(&[-1])), (rat(6), iv(&[1]))]);
    }

    #[test]
    fn edge_midpoint_chart_mixes_lineality_and_annihilation() {
        // doubled hexagon: (2,1) is a non-vertex boundary lattice point
        let two = BigRational::from(BigInt::from(2));
        let one = BigRational::one();
        let m = RatMatrix::from_rows_vec(vec![
            vec![two.clone(), one.clone()],
            vec![one, two],
        ]);
        let kit = KitComplex::from_form(PolForm::new(m).unwrap()).unwrap();
        let p = chart_ring(&kit, &iv(&[2, 1]), &iv(&[0, 0])).unwrap();
        assert!(!p.interior);
        assert_eq!(p.star.len(), 2);
        // generators: ±(0,1) along the edge plus one lift on each side
        assert_eq!(p.generators.len(), 4);
        let annihilations: Vec<&ChartRelation> = p
            .relations
            .iter()
            .filter(|r| matches!(r, ChartRelation::Annihilation { .. }))
            .collect();
        assert_eq!(annihilations.len(), 1, "exactly the two opposite lifts annihilate");
        // the annihilating pair is the one whose weights point to opposite sides
        if let ChartRelation::Annihilation { i, j } = annihilations[0] {
            let wi = &p.generators[*i].1[0];
            let wj = &p.generators[*j].1[0];
            assert_eq!(wi * wj, BigInt::from(-1));
        }
    }

    #[test]
    fn alpha_outside_cell_is_rejected() {
        let kit = g1_kit();
        let err = chart_ring(&kit, &iv(&[3]), &iv(&[0])).unwrap_err();
        assert!(matches!(err, FansError::PointOutsideCell));
    }
}
