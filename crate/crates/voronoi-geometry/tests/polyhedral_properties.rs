//! Randomized properties of the exact polyhedral engine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use voronoi_geometry::{sigma_zero, Cone, LatticePolytope, PolForm, RANK_CAP};

fn small_points(dim: usize, max_pts: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, dim), 1..=max_pts)
}

fn to_rat(p: &[i64]) -> Vec<BigRational> {
    p.iter().map(|&c| BigRational::from(BigInt::from(c))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_contains_all_inputs(pts in small_points(2, 8)) {
        let rats: Vec<Vec<BigRational>> = pts.iter().map(|p| to_rat(p)).collect();
        let poly = LatticePolytope::from_points(2, &rats);
        for p in &rats {
            prop_assert!(poly.contains(p), "input point {:?} escaped the hull", p);
        }
        // vertices come from the input set
        for v in &poly.vertices {
            prop_assert!(rats.contains(v), "fabricated vertex {:?}", v);
        }
    }

    #[test]
    fn hull_contains_midpoints(pts in small_points(3, 6)) {
        let rats: Vec<Vec<BigRational>> = pts.iter().map(|p| to_rat(p)).collect();
        let poly = LatticePolytope::from_points(3, &rats);
        let two = BigRational::from(BigInt::from(2));
        for a in &rats {
            for b in &rats {
                let mid: Vec<BigRational> =
                    a.iter().zip(b).map(|(x, y)| (x + y) / &two).collect();
                prop_assert!(poly.contains(&mid));
            }
        }
    }

    #[test]
    fn cone_double_dual_is_identity(gens in small_points(3, 5)) {
        let igens: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&c| BigInt::from(c)).collect::<Vec<BigInt>>())
            .filter(|g: &Vec<BigInt>| !g.iter().all(|x| x.is_zero()))
            .collect();
        prop_assume!(!igens.is_empty());
        let c = Cone::from_generators(3, &igens);
        prop_assert!(c.eq_cone(&c.dual().dual()));
        for g in &igens {
            prop_assert!(c.contains_int(g), "generator {:?} outside its cone", g);
        }
    }

    #[test]
    fn sigma_zero_is_centrally_symmetric(a in 1i64..=4, b in -2i64..=2, c in 1i64..=4) {
        // M = [[a, b/2], [b/2, c]] with 4ac > b² gives E = a u₁² + b u₁u₂ + c u₂².
        prop_assume!(4 * a * c > b * b);
        let half = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(2));
        let m = lattice_core::RatMatrix::from_rows_vec(vec![
            vec![BigRational::from(BigInt::from(a)), half(b)],
            vec![half(b), BigRational::from(BigInt::from(c))],
        ]);
        let form = PolForm::new(m).unwrap();
        let sigma = sigma_zero(&form, RANK_CAP).unwrap();
        // 0 lies strictly inside, and -v is a vertex whenever v is
        let origin = vec![BigRational::zero(), BigRational::zero()];
        prop_assert!(sigma.relint_contains(&origin));
        for v in &sigma.vertices {
            let neg: Vec<BigRational> = v.iter().map(|x| -x).collect();
            prop_assert!(sigma.vertices.contains(&neg), "missing -{:?}", v);
        }
    }
}
