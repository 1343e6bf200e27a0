//! Cellular cohomology of the quotient complex: the face classes modulo the
//! translation lattice form a finite cell structure on a real torus, and the
//! structure-sheaf cohomology of the totally degenerate closed fiber is read
//! off from its rational Betti numbers.

use crate::kit::{CellFace, KitComplex};
use crate::strata::stratification;
use crate::FansError;
use lattice_core::{smith_normal_form, IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Greedy difference basis of a face: differences of the lex-sorted vertex
/// list against the first vertex, kept when they increase the rank. The
/// result depends only on the face up to translation.
fn difference_basis(face: &CellFace) -> Vec<Vec<BigInt>> {
    let verts = face
        .vertices_int()
        .expect("complex faces of an integral cell are integral");
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for v in verts.iter().skip(1) {
        let cand: Vec<BigInt> = v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect();
        let mut trial = basis.clone();
        trial.push(cand.clone());
        if int_rank(&trial) > basis.len() {
            basis.push(cand);
        }
        if basis.len() == face.dim {
            break;
        }
    }
    assert_eq!(basis.len(), face.dim, "difference basis must span the face");
    basis
}

fn int_rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = IntMatrix::zero(rows.len(), rows[0].len());
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in r.iter().enumerate() {
            m.set(i, j, c.clone());
        }
    }
    smith_normal_form(&m)
        .divisors
        .iter()
        .filter(|d| !d.is_zero())
        .count()
}

/// Coordinates of w in the column span of `basis` (rational, exact).
fn coords_in_basis(basis: &[Vec<BigInt>], w: &[BigRational]) -> Vec<BigRational> {
    let k = basis.len();
    let gram = RatMatrix::from_rows_vec(
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| BigRational::from(lattice_core::dot(&basis[i], &basis[j])))
                    .collect()
            })
            .collect(),
    );
    let rhs: Vec<BigRational> = basis
        .iter()
        .map(|b| {
            b.iter()
                .zip(w)
                .map(|(a, x)| BigRational::from(a.clone()) * x)
                .fold(BigRational::zero(), |acc, t| acc + t)
        })
        .collect();
    let coords = gram
        .inverse()
        .expect("difference basis is linearly independent")
        .mul_vec(&rhs);
    // verify w really lies in the span
    let d = w.len();
    for i in 0..d {
        let mut acc = BigRational::zero();
        for (c, b) in coords.iter().zip(basis) {
            acc += c * BigRational::from(b[i].clone());
        }
        assert_eq!(acc, w[i], "vector must lie in the span of the basis");
    }
    coords
}

/// Incidence sign of a facet G of F: the sign of the determinant of
/// [bary(G) − bary(F) | basis(G)] written in the basis of F. Translation
/// invariance of the difference bases makes this independent of which
/// translate represents each class.
fn incidence_sign(f: &CellFace, g_face: &CellFace) -> i64 {
    let bf = difference_basis(f);
    let bg = difference_basis(g_face);
    let bary_f = f.barycenter();
    let bary_g = g_face.barycenter();
    let out: Vec<BigRational> = bary_g.iter().zip(&bary_f).map(|(a, b)| a - b).collect();
    let mut cols: Vec<Vec<BigRational>> = vec![coords_in_basis(&bf, &out)];
    for b in &bg {
        let br: Vec<BigRational> = b.iter().map(|c| BigRational::from(c.clone())).collect();
        cols.push(coords_in_basis(&bf, &br));
    }
    // clear positive denominators column by column; the sign is unchanged
    let q = f.dim;
    let mut m = IntMatrix::zero(q, q);
    for (j, col) in cols.iter().enumerate() {
        let lcm = col
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        for (i, c) in col.iter().enumerate() {
            let scaled = c * BigRational::from(lcm.clone());
            debug_assert!(scaled.is_integer());
            m.set(i, j, scaled.to_integer());
        }
    }
    let det = m.det();
    assert!(!det.is_zero(), "facet frame must be a basis");
    if det.is_positive() {
        1
    } else {
        -1
    }
}

/// Rational Betti numbers (b₀,…,b_g) of the quotient cell complex of a
/// totally degenerate kit; these are the structure-sheaf cohomology ranks
/// of the closed fiber.
pub fn torus_cell_cohomology(kit: &KitComplex) -> Result<Vec<usize>, FansError> {
    if kit.dim_a > 0 {
        return Err(FansError::AbelianUnsupported);
    }
    let g = kit.g();
    let strat = stratification(kit);
    // classes per dimension, in stratification order
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); g + 1];
    for s in &strat.strata {
        by_dim[s.cell_dim].push(s.class_id);
    }
    let index_in_dim = |class_id: usize, q: usize| -> usize {
        by_dim[q]
            .iter()
            .position(|&c| c == class_id)
            .expect("class listed in its dimension")
    };

    // boundary[q]: matrix C_q → C_{q−1}, rows indexed by (q−1)-classes
    let mut boundary: Vec<Vec<Vec<i64>>> = Vec::new();
    boundary.push(Vec::new()); // ∂₀ = 0, unused
    for q in 1..=g {
        let rows = by_dim[q - 1].len();
        let cols = by_dim[q].len();
        let mut m = vec![vec![0i64; cols]; rows];
        for (col, &cid) in by_dim[q].iter().enumerate() {
            let rep = &strat.strata[cid].rep;
            for facet in kit.face_skeleton(rep) {
                if facet.dim + 1 != q {
                    continue;
                }
                let gid = strat.class_of(kit, &facet)?;
                let row = index_in_dim(gid, q - 1);
                m[row][col] += incidence_sign(rep, &facet);
            }
        }
        boundary.push(m);
    }

    // ∂_{q} ∘ ∂_{q+1} = 0
    for q in 1..g {
        let a = &boundary[q];
        let b = &boundary[q + 1];
        for i in 0..a.len() {
            for j in 0..b[0].len() {
                let mut acc = 0i64;
                for (k, bk) in b.iter().enumerate() {
                    acc += a[i][k] * bk[j];
                }
                assert_eq!(acc, 0, "boundary must square to zero");
            }
        }
    }

    let rank = |m: &Vec<Vec<i64>>| -> usize {
        if m.is_empty() || m[0].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = m.clone();
        let im = IntMatrix::from_rows(&rows);
        smith_normal_form(&im)
            .divisors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    };
    let mut betti = Vec::with_capacity(g + 1);
    for q in 0..=g {
        let r_q = if q == 0 { 0 } else { rank(&boundary[q]) };
        let r_q1 = if q == g { 0 } else { rank(&boundary[q + 1]) };
        betti.push(by_dim[q].len() - r_q - r_q1);
    }
    Ok(betti)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::RatMatrix;
    use num_traits::One;
    use voronoi_geometry::PolForm;

    fn kit_from_rows(rows: Vec<Vec<BigRational>>) -> KitComplex {
        KitComplex::from_form(PolForm::new(RatMatrix::from_rows_vec(rows)).unwrap()).unwrap()
    }

    fn hexagon_kit() -> KitComplex {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let one = BigRational::one();
        kit_from_rows(vec![vec![one.clone(), half.clone()], vec![half, one]])
    }

    #[test]
    fn hexagon_betti_numbers() {
        let kit = hexagon_kit();
        assert_eq!(torus_cell_cohomology(&kit).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn g1_betti_numbers() {
        let kit = kit_from_rows(vec![vec![BigRational::from(BigInt::from(2))]]);
        assert_eq!(torus_cell_cohomology(&kit).unwrap(), vec![1, 1]);
    }

    #[test]
    fn rectangle_betti_numbers() {
        let one = BigRational::one();
        let two = BigRational::from(BigInt::from(2));
        let kit = kit_from_rows(vec![
            vec![one, BigRational::zero()],
            vec![BigRational::zero(), two],
        ]);
        assert_eq!(torus_cell_cohomology(&kit).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn abelian_part_is_rejected() {
        use degen_data::{AbelianDescriptor, DegenerationDatum};
        use lattice_core::IntMatrix;
        use valued_scalars::ValuedScalar;
        let phi = IntMatrix::from_rows(&[vec![1]]);
        let tau = vec![vec![ValuedScalar::t_pow(BigRational::from(BigInt::from(2)))]];
        let d = DegenerationDatum::new(
            phi,
            tau,
            vec![1],
            AbelianDescriptor { dim_a: 1, h0_m: BigInt::one() },
        )
        .unwrap();
        let kit = degen_data::nefc_kit(&d, 1).unwrap();
        let kc = KitComplex::from_nefc(&kit).unwrap();
        let err = torus_cell_cohomology(&kc).unwrap_err();
        assert!(matches!(err, FansError::AbelianUnsupported));
    }
}
