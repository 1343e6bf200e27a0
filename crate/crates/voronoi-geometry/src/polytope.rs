//! Bounded rational polytopes with exact V- and H-representations.

use crate::dd::{hull_rep, vertices_of, Halfspace};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A bounded polytope carrying both representations. Lower-dimensional
/// polytopes record their affine hull in `equalities`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<BigRational>>,
    pub facets: Vec<Halfspace>,
    pub equalities: Vec<Halfspace>,
}

/// Divides a halfspace through by the content of its normal, so the normal is
/// a primitive integer vector (the offset stays rational).
fn primitivize(h: &Halfspace) -> Halfspace {
    let mut c = BigInt::zero();
    for a in &h.normal {
        c = c.gcd(a);
    }
    if c.is_zero() || c.is_one() {
        return h.clone();
    }
    Halfspace {
        normal: h.normal.iter().map(|a| a / &c).collect(),
        offset: &h.offset / BigRational::from(c),
    }
}

fn sort_halfspaces(hs: &mut Vec<Halfspace>) {
    hs.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
    hs.dedup();
}

impl LatticePolytope {
    /// Convex hull of finitely many points.
    pub fn from_points(dim: usize, points: &[Vec<BigRational>]) -> Self {
        assert!(!points.is_empty(), "hull of no points");
        assert!(points.iter().all(|p| p.len() == dim), "point dimension mismatch");
        let hull = hull_rep(dim, points);
        // Recover the exact vertex set from the irredundant H-representation.
        let mut constraints: Vec<Halfspace> = Vec::new();
        for e in &hull.equalities {
            constraints.push(e.clone());
            constraints.push(Halfspace {
                normal: e.normal.iter().map(|a| -a).collect(),
                offset: -e.offset.clone(),
            });
        }
        constraints.extend(hull.facets.iter().cloned());
        let (vertices, rays) = if constraints.is_empty() {
            // dim == 0: the single point of X_ℝ = {()} — not used in practice.
            (vec![points[0].clone()], Vec::new())
        } else {
            vertices_of(dim, &constraints).expect("hull of points is nonempty")
        };
        assert!(rays.is_empty(), "hull of finitely many points is bounded");
        let mut facets: Vec<Halfspace> = hull.facets.iter().map(primitivize).collect();
        let mut equalities: Vec<Halfspace> = hull.equalities.iter().map(primitivize).collect();
        sort_halfspaces(&mut facets);
        sort_halfspaces(&mut equalities);
        LatticePolytope { dim, vertices, facets, equalities }
    }

    /// Intersection of halfspaces; `None` when empty, panics when unbounded.
    pub fn from_halfspaces(dim: usize, halfspaces: &[Halfspace]) -> Option<Self> {
        let (vertices, rays) = vertices_of(dim, halfspaces)?;
        assert!(rays.is_empty(), "halfspace intersection must be bounded");
        Some(Self::from_points(dim, &vertices))
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.equalities.iter().all(|h| h.eval(x).is_zero())
            && self.facets.iter().all(|h| !h.eval(x).is_negative())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        let xr: Vec<BigRational> = x.iter().map(|a| BigRational::from(a.clone())).collect();
        self.contains(&xr)
    }

    /// Relative-interior membership (interior for full-dimensional polytopes).
    pub fn relint_contains(&self, x: &[BigRational]) -> bool {
        self.equalities.iter().all(|h| h.eval(x).is_zero())
            && self.facets.iter().all(|h| h.eval(x).is_positive())
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        crate::dd::affine_rank(&self.vertices)
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(|c| c.is_integer())
    }

    /// Least common multiple of all vertex-coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in self.vertices.iter().flatten() {
            l = l.lcm(c.denom());
        }
        l
    }

    /// The dilate `k·P` for a positive integer `k`.
    pub fn dilate(&self, k: &BigInt) -> Self {
        assert!(k.is_positive(), "dilation factor must be positive");
        let kq = BigRational::from(k.clone());
        let scale = |h: &Halfspace| Halfspace {
            normal: h.normal.clone(),
            offset: &h.offset * &kq,
        };
        LatticePolytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|c| c * &kq).collect())
                .collect(),
            facets: self.facets.iter().map(scale).collect(),
            equalities: self.equalities.iter().map(scale).collect(),
        }
    }

    /// The translate `P + t`.
    pub fn translate(&self, t: &[BigRational]) -> Self {
        let shift = |h: &Halfspace| {
            let at: BigRational = h
                .normal
                .iter()
                .zip(t)
                .map(|(a, ti)| BigRational::from(a.clone()) * ti)
                .sum();
            Halfspace { normal: h.normal.clone(), offset: &h.offset - at }
        };
        LatticePolytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(t).map(|(c, ti)| c + ti).collect())
                .collect(),
            facets: self.facets.iter().map(shift).collect(),
            equalities: self.equalities.iter().map(shift).collect(),
        }
    }

    pub fn translate_int(&self, t: &[BigInt]) -> Self {
        let tr: Vec<BigRational> = t.iter().map(|a| BigRational::from(a.clone())).collect();
        self.translate(&tr)
    }

    /// `P ∩ Q`; `None` when the intersection is empty.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        let mut hs: Vec<Halfspace> = Vec::new();
        for p in [self, other] {
            for e in &p.equalities {
                hs.push(e.clone());
                hs.push(Halfspace {
                    normal: e.normal.iter().map(|a| -a).collect(),
                    offset: -e.offset.clone(),
                });
            }
            hs.extend(p.facets.iter().cloned());
        }
        LatticePolytope::from_halfspaces(self.dim, &hs)
    }

    pub fn meets(&self, other: &Self) -> bool {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        let mut hs: Vec<Halfspace> = Vec::new();
        for p in [self, other] {
            for e in &p.equalities {
                hs.push(e.clone());
                hs.push(Halfspace {
                    normal: e.normal.iter().map(|a| -a).collect(),
                    offset: -e.offset.clone(),
                });
            }
            hs.extend(p.facets.iter().cloned());
        }
        vertices_of(self.dim, &hs).is_some()
    }

    /// All lattice points of the polytope, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Vec<BigInt>> {
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut min = self.vertices[0][i].clone();
            let mut max = min.clone();
            for v in &self.vertices[1..] {
                if v[i] < min {
                    min = v[i].clone();
                }
                if v[i] > max {
                    max = v[i].clone();
                }
            }
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }
        let mut out = Vec::new();
        if (0..self.dim).any(|i| lo[i] > hi[i]) {
            return out;
        }
        let mut cur = lo.clone();
        'scan: loop {
            if self.contains_int(&cur) {
                out.push(cur.clone());
            }
            for i in (0..self.dim).rev() {
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    for j in i + 1..self.dim {
                        cur[j] = lo[j].clone();
                    }
                    continue 'scan;
                }
            }
            break;
        }
        out
    }

    /// Squared Euclidean norm of the farthest vertex.
    pub fn max_vertex_norm_sq(&self) -> BigRational {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|c| c * c).sum::<BigRational>())
            .max()
            .expect("polytope has vertices")
    }
}
