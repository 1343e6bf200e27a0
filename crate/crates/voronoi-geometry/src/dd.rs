//! Exact double-description: generators of a halfspace-intersection cone.
//!
//! Everything polyhedral in this crate routes through one routine:
//! `halfspace_cone_generators` computes a generator form (lineality basis +
//! extreme rays) of {x ∈ ℝ^d : n·x ≥ 0 for every listed normal n}. By cone
//! duality the same routine converts cone generators to facets, polytope
//! H-representations to vertices (homogenize), and point sets to affine
//! hulls plus facets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Generator form of a convex cone: span(lineality) + cone(rays).
#[derive(Clone, Debug)]
pub struct GeneratorForm {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

/// Clear denominators and divide by content; keeps direction. Returns None
/// for the zero vector.
pub fn normalize_ray(v: &[BigRational]) -> Option<Vec<BigInt>> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return None;
    }
    Some(ints.iter().map(|x| x / &g).collect())
}

/// Primitive integer vector with canonical sign (first nonzero positive):
/// the representative of a line.
fn normalize_line(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return None;
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &g).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            out = out.iter().map(|x| -x).collect();
        }
    }
    Some(out)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank of a set of integer vectors (fraction-free elimination).
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut rank = 0;
    for j in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][j].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][j].clone();
        for i in 0..m.len() {
            if i == rank || m[i][j].is_zero() {
                continue;
            }
            let f = m[i][j].clone();
            for k in 0..cols {
                m[i][k] = &m[i][k] * &pivot - &f * &m[rank][k];
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

struct Ray {
    v: Vec<BigInt>,
    tight: Vec<usize>,
}

/// Generators of {x : n·x ≥ 0 for all n in normals}.
///
/// Extremality is decided by the algebraic rank test (the minimal face of a
/// ray has dimension lineality+1 iff its tight normals have rank
/// d − lineality − 1), which stays correct under redundant input.
pub fn halfspace_cone_generators(dim: usize, normals: &[Vec<BigInt>]) -> GeneratorForm {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (ci, h) in normals.iter().enumerate() {
        assert_eq!(h.len(), dim, "normal dimension mismatch");
        if h.iter().all(|x| x.is_zero()) {
            continue;
        }
        // Case 1: the constraint cuts the lineality space.
        if let Some(bi) = lineality.iter().position(|b| !dot(h, b).is_zero()) {
            let b = lineality.remove(bi);
            let hb = dot(h, &b);
            // Project remaining lineality onto h⊥: l' = (h·b)·l − (h·l)·b.
            lineality = lineality
                .iter()
                .map(|l| {
                    let hl = dot(h, l);
                    let combo: Vec<BigInt> =
                        l.iter().zip(&b).map(|(x, y)| &hb * x - &hl * y).collect();
                    normalize_line(&combo).expect("projection of independent line is nonzero")
                })
                .collect();
            // Project existing rays onto h⊥ (direction preserved).
            for r in &mut rays {
                let hr = dot(h, &r.v);
                if !hr.is_zero() {
                    let combo: Vec<BigRational> = r
                        .v
                        .iter()
                        .zip(&b)
                        .map(|(x, y)| {
                            BigRational::from(x.clone())
                                - BigRational::new(hr.clone(), hb.clone()) * BigRational::from(y.clone())
                        })
                        .collect();
                    r.v = normalize_ray(&combo).expect("projected ray is nonzero");
                }
                r.tight.push(ci);
            }
            // The surviving half of the cut line is a new extreme ray,
            // tight at every previously processed constraint.
            let dir = if hb.is_negative() { b.iter().map(|x| -x).collect() } else { b };
            rays.push(Ray { v: dir, tight: (0..ci).collect() });
            continue;
        }
        // Case 2: lineality ⊆ h⊥; classic double-description step.
        let signs: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.v)).collect();
        if signs.iter().all(|s| !s.is_negative()) {
            for (r, s) in rays.iter_mut().zip(&signs) {
                if s.is_zero() {
                    r.tight.push(ci);
                }
            }
            continue;
        }
        let needed_rank = dim - lineality.len() - 1;
        let mut next: Vec<Ray> = Vec::new();
        for (r, s) in rays.iter().zip(&signs) {
            if !s.is_negative() {
                let mut tight = r.tight.clone();
                if s.is_zero() {
                    tight.push(ci);
                }
                next.push(Ray { v: r.v.clone(), tight });
            }
        }
        for (ri, si) in rays.iter().zip(&signs) {
            if !si.is_positive() {
                continue;
            }
            for (rj, sj) in rays.iter().zip(&signs) {
                if !sj.is_negative() {
                    continue;
                }
                // c = (h·r⁺)·r⁻ − (h·r⁻)·r⁺ lies on h⊥ inside the cone.
                let combo: Vec<BigInt> =
                    rj.v.iter().zip(&ri.v).map(|(x, y)| si * x - sj * y).collect();
                let Some(c) = normalize_line_free(&combo) else { continue };
                let mut tight: Vec<usize> =
                    ri.tight.iter().filter(|t| rj.tight.contains(t)).cloned().collect();
                tight.push(ci);
                let tight_normals: Vec<Vec<BigInt>> =
                    tight.iter().map(|&t| normals[t].clone()).collect();
                if rank_int(&tight_normals) != needed_rank {
                    continue;
                }
                if next.iter().any(|r| r.v == c) {
                    continue;
                }
                next.push(Ray { v: c, tight });
            }
        }
        rays = next;
    }

    let mut out_rays: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out_rays.sort();
    out_rays.dedup();
    let mut out_lin: Vec<Vec<BigInt>> = lineality;
    out_lin.sort();
    GeneratorForm { lineality: out_lin, rays: out_rays }
}

/// Primitive form of a nonzero integer vector, direction preserved.
fn normalize_line_free(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

/// One halfspace a·x + b ≥ 0 of a polytope (or, with b = 0, of a cone).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigRational,
}

impl Halfspace {
    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut acc = self.offset.clone();
        for (a, xi) in self.normal.iter().zip(x) {
            acc += BigRational::from(a.clone()) * xi;
        }
        acc
    }

    fn homogenize(&self) -> Vec<BigInt> {
        // (b, a) as an integer vector; b may be rational.
        let mut v = vec![self.offset.clone()];
        v.extend(self.normal.iter().map(|a| BigRational::from(a.clone())));
        normalize_ray(&v).expect("nonzero halfspace")
    }
}

/// V-representation of {x : every halfspace holds}: vertices plus recession
/// rays (empty rays for bounded sets). None when the set is empty.
pub fn vertices_of(dim: usize, halfspaces: &[Halfspace]) -> Option<(Vec<Vec<BigRational>>, Vec<Vec<BigInt>>)> {
    let mut normals: Vec<Vec<BigInt>> = Vec::with_capacity(halfspaces.len() + 1);
    // x₀ ≥ 0 first so the homogenization cone stays in the upper halfspace.
    let mut e0 = vec![BigInt::zero(); dim + 1];
    e0[0] = BigInt::one();
    normals.push(e0);
    normals.extend(halfspaces.iter().map(|h| h.homogenize()));
    let gf = halfspace_cone_generators(dim + 1, &normals);
    assert!(
        gf.lineality.is_empty(),
        "homogenization cone of a bounded-below feasible set has no lineality"
    );
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in gf.rays {
        if r[0].is_zero() {
            rays.push(r[1..].to_vec());
        } else {
            let x0 = BigRational::from(r[0].clone());
            vertices.push(r[1..].iter().map(|x| BigRational::from(x.clone()) / &x0).collect());
        }
    }
    if vertices.is_empty() && rays.is_empty() {
        return None;
    }
    vertices.sort();
    rays.sort();
    Some((vertices, rays))
}

/// Dimension of the affine hull of a set of rational points.
pub fn affine_rank(points: &[Vec<BigRational>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let diffs: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .filter_map(|p| {
            let d: Vec<BigRational> = p.iter().zip(&points[0]).map(|(a, b)| a - b).collect();
            normalize_ray(&d)
        })
        .collect();
    rank_int(&diffs)
}

/// H-representation of conv(points): affine-hull equalities and facets.
#[derive(Clone, Debug)]
pub struct HullRep {
    pub equalities: Vec<Halfspace>,
    pub facets: Vec<Halfspace>,
}

impl HullRep {
    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.equalities.iter().all(|h| h.eval(x).is_zero())
            && self.facets.iter().all(|h| !h.eval(x).is_negative())
    }

    /// Relative-interior membership: equalities hold, facets strict.
    pub fn relint_contains(&self, x: &[BigRational]) -> bool {
        self.equalities.iter().all(|h| h.eval(x).is_zero())
            && self.facets.iter().all(|h| h.eval(x).is_positive())
    }
}

fn dehomogenize(v: &[BigInt]) -> Option<Halfspace> {
    let normal = v[1..].to_vec();
    if normal.iter().all(|x| x.is_zero()) {
        return None; // the trivial 1 ≥ 0 facet of the homogenization
    }
    Some(Halfspace { normal, offset: BigRational::from(v[0].clone()) })
}

/// Affine hull + facets of the convex hull of finitely many rational points.
pub fn hull_rep(dim: usize, points: &[Vec<BigRational>]) -> HullRep {
    assert!(!points.is_empty(), "hull of no points");
    let homog: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut v = vec![BigRational::one()];
            v.extend(p.iter().cloned());
            normalize_ray(&v).expect("homogenized point is nonzero")
        })
        .collect();
    let gf = halfspace_cone_generators(dim + 1, &homog);
    let equalities = gf.lineality.iter().filter_map(|v| dehomogenize(v)).collect();
    let facets = gf.rays.iter().filter_map(|v| dehomogenize(v)).collect();
    HullRep { equalities, facets }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn hs(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace {
            normal: normal.iter().map(|&x| BigInt::from(x)).collect(),
            offset: q(offset),
        }
    }

    #[test]
    fn square_from_halfspaces() {
        let (v, rays) = vertices_of(
            2,
            &[hs(&[1, 0], 1), hs(&[-1, 0], 1), hs(&[0, 1], 1), hs(&[0, -1], 1)],
        )
        .unwrap();
        assert!(rays.is_empty());
        assert_eq!(v.len(), 4);
        assert!(v.contains(&vec![q(1), q(1)]));
        assert!(v.contains(&vec![q(-1), q(-1)]));
    }

    #[test]
    fn empty_intersection() {
        assert!(vertices_of(1, &[hs(&[1], -2), hs(&[-1], 1)]).is_none());
    }

    #[test]
    fn unbounded_has_rays() {
        let (v, rays) = vertices_of(1, &[hs(&[1], 0)]).unwrap();
        assert_eq!(v, vec![vec![q(0)]]);
        assert_eq!(rays, vec![vec![BigInt::from(1)]]);
    }

    #[test]
    fn dual_of_quadrant() {
        // {x ≥ 0, y ≥ 0} generators: rays e₁, e₂, no lineality.
        let gf = halfspace_cone_generators(
            2,
            &[vec![BigInt::from(1), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(1)]],
        );
        assert!(gf.lineality.is_empty());
        assert_eq!(gf.rays.len(), 2);
    }

    #[test]
    fn halfplane_keeps_lineality() {
        let gf = halfspace_cone_generators(2, &[vec![BigInt::from(1), BigInt::from(0)]]);
        assert_eq!(gf.lineality.len(), 1);
        assert_eq!(gf.lineality[0], vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(gf.rays.len(), 1);
        assert_eq!(gf.rays[0], vec![BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn hull_of_segment_in_plane() {
        let pts = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        let rep = hull_rep(2, &pts);
        assert_eq!(rep.equalities.len(), 1, "one affine-hull equation");
        assert_eq!(rep.facets.len(), 2, "two endpoints");
        assert!(rep.contains(&[q(1), q(0)]));
        let half: Vec<BigRational> = vec![q(1), BigRational::new(BigInt::from(1), BigInt::from(2))];
        assert!(rep.relint_contains(&half));
        assert!(!rep.relint_contains(&[q(1), q(0)]));
        assert!(!rep.contains(&[q(0), q(0)]));
    }

    #[test]
    fn hull_of_triangle() {
        let pts = vec![vec![q(0), q(0)], vec![q(1), q(0)], vec![q(0), q(1)]];
        let rep = hull_rep(2, &pts);
        assert!(rep.equalities.is_empty());
        assert_eq!(rep.facets.len(), 3);
        let third = BigRational::new(BigInt::from(1), BigInt::from(4));
        assert!(rep.relint_contains(&[third.clone(), third]));
    }

    #[test]
    fn rank_small() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(rank_int(&rows), 2);
    }
}
