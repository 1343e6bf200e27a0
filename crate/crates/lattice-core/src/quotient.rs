//! Quotients ℤⁿ / im(M): canonical representatives, enumeration, membership.

use crate::matrix::IntMatrix;
use crate::snf::{smith_normal_form, SnfDecomposition};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
#[cfg(test)]
use num_traits::{One, Signed};

/// The quotient of ℤⁿ by the column span of an n×k integer matrix,
/// in Smith coordinates.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    pub snf: SnfDecomposition,
    u_inv: IntMatrix,
    n: usize,
}

impl LatticeQuotient {
    pub fn new(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        let u_inv = snf
            .u
            .to_rational()
            .inverse()
            .expect("U unimodular")
            .to_integer()
            .expect("unimodular inverse is integral");
        LatticeQuotient { snf, u_inv, n: m.rows }
    }

    /// Finite exactly when the image has full rank n.
    pub fn is_finite(&self) -> bool {
        self.snf.rank() == self.n
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.snf.divisors.iter().product())
    }

    /// Canonical representative of x mod im(M): Smith coordinates reduced
    /// into [0, dᵢ) where dᵢ ≠ 0, left untouched on the free part.
    pub fn canon(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.n);
        let mut c = self.snf.u.mul_vec(x);
        for (i, ci) in c.iter_mut().enumerate() {
            if i < self.snf.divisors.len() && !self.snf.divisors[i].is_zero() {
                *ci = ci.mod_floor(&self.snf.divisors[i]);
            }
        }
        self.u_inv.mul_vec(&c)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.canon(x).iter().all(|c| c.is_zero())
    }

    /// All canonical representatives (finite case only), in Smith
    /// lexicographic order.
    pub fn representatives(&self) -> Vec<Vec<BigInt>> {
        let order = self.order().expect("representatives of an infinite quotient");
        let card = order.to_string().parse::<usize>().expect("quotient too large to enumerate");
        let mut reps = Vec::with_capacity(card);
        let mut idx = vec![BigInt::zero(); self.n];
        loop {
            reps.push(self.u_inv.mul_vec(&idx));
            // Odometer over ∏ [0, dᵢ).
            let mut i = 0;
            loop {
                if i == self.n {
                    return reps;
                }
                idx[i] += 1;
                if idx[i] < self.snf.divisors[i] {
                    break;
                }
                idx[i] = BigInt::zero();
                i += 1;
            }
        }
    }
}

/// Solve M·y = x over ℤ; None when x is not in the image.
pub fn solve_in_image(m: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(x.len(), m.rows);
    let snf = smith_normal_form(m);
    let c = snf.u.mul_vec(x);
    let t = snf.divisors.len();
    let mut z = vec![BigInt::zero(); m.cols];
    for (i, ci) in c.iter().enumerate() {
        if i < t && !snf.divisors[i].is_zero() {
            let (q, r) = ci.div_rem(&snf.divisors[i]);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// Basis of the saturation of the column span of M: the first rank(M)
/// columns of U⁻¹ (n×r matrix).
pub fn saturation_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    assert!(r > 0, "saturation of the zero lattice");
    let u_inv = snf
        .u
        .to_rational()
        .inverse()
        .expect("U unimodular")
        .to_integer()
        .expect("unimodular inverse is integral");
    let mut basis = IntMatrix::zero(m.rows, r);
    for j in 0..r {
        for i in 0..m.rows {
            basis.set(i, j, u_inv.get(i, j).clone());
        }
    }
    basis
}

/// Divide a nonzero integer vector by the gcd of its entries.
pub fn primitive_vector(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    assert!(!g.is_zero(), "primitive part of the zero vector");
    v.iter().map(|x| x / &g).collect()
}

/// Gcd of the entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

/// Lexicographic comparison of integer vectors (for canonical orderings).
pub fn lex_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    a.cmp(b)
}

/// Dot product of integer vectors.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Componentwise sum.
pub fn vec_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise difference.
pub fn vec_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scalar multiple.
pub fn vec_scale(c: &BigInt, a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| c * x).collect()
}

/// Integer vectors in the box |v|_∞ ≤ r, in lexicographic order.
pub fn box_vectors(dim: usize, r: i64) -> Vec<Vec<BigInt>> {
    assert!(r >= 0);
    let mut out = Vec::new();
    let mut cur = vec![-r; dim];
    loop {
        out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] <= r {
                break;
            }
            cur[i] = -r;
        }
    }
}

/// One when the argument is the all-zeros slice.
pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}
