//! The Voronoi polytope Σ(0) of a positive-definite form, its translated cell
//! complex, star neighborhoods, the convexity-lemma report, and the quadratic
//! D function.

use crate::dd::Halfspace;
use crate::faces::{face_lattice, FaceLattice};
use crate::form::PolForm;
use crate::polytope::LatticePolytope;
use crate::VorError;
use lattice_core::{box_vectors, content, dot, vec_add, vec_scale, vec_sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Default guard on the number of coordinates (desk scale).
pub const RANK_CAP: usize = 6;

/// Smallest nonnegative integer `c` with `c² ≥ q`.
pub fn ceil_sqrt(q: &BigRational) -> BigInt {
    if !q.is_positive() {
        return BigInt::zero();
    }
    let mut c = q.ceil().to_integer().sqrt();
    while BigRational::from(&c * &c) < *q {
        c += 1;
    }
    c
}

fn norm_sq_int(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x * x).sum()
}

fn norm_sq_rat(v: &[BigRational]) -> BigRational {
    v.iter().map(|x| x * x).sum()
}

/// The Voronoi polytope `Σ(0) = {x : E(u) + u(x) ≥ 0 for all u ∈ X∨}`.
///
/// Constraints are enumerated over a finite box and certified sufficient by
/// (a) re-checking all primitive `u` in the doubled box against the vertices
/// and (b) an eigenvalue tail bound covering everything beyond the doubled
/// box; the box doubles until both hold.
pub fn sigma_zero(form: &PolForm, rank_cap: usize) -> Result<LatticePolytope, VorError> {
    let g = form.rank();
    if g > rank_cap {
        return Err(VorError::RankCapExceeded);
    }
    let lambda = form.eigen_floor();
    let mut r: i64 = 2;
    while r <= 4096 {
        let mut halfspaces = Vec::new();
        for u in box_vectors(g, r) {
            if content(&u).is_one() {
                halfspaces.push(Halfspace { normal: u.clone(), offset: form.eval(&u) });
            }
        }
        let poly = LatticePolytope::from_halfspaces(g, &halfspaces)
            .expect("Σ(0) contains the origin");
        let rho_sq = poly.max_vertex_norm_sq();
        // (a) no primitive u in the doubled box cuts further
        let mut stable = true;
        'outer: for u in box_vectors(g, 2 * r) {
            if !content(&u).is_one() {
                continue;
            }
            let e = form.eval(&u);
            for v in &poly.vertices {
                let uv: BigRational = u
                    .iter()
                    .zip(v)
                    .map(|(a, b)| BigRational::from(a.clone()) * b)
                    .sum();
                if (&e + uv).is_negative() {
                    stable = false;
                    break 'outer;
                }
            }
        }
        // (b) tail bound: λ²·(2r)² ≥ ρ² makes every |u|∞ > 2r slack
        let two_r = BigRational::from(BigInt::from(2 * r));
        let tail_ok = &lambda * &lambda * &two_r * &two_r >= rho_sq;
        if stable && tail_ok {
            return Ok(poly);
        }
        r *= 2;
    }
    Err(VorError::Unstable)
}

/// Least positive integer `l₀` such that `l₀·Σ(0)` (the level-`l₀` polytope of
/// the scaled form) is integral, searched up to `bound`.
pub fn minimal_scale(form: &PolForm, bound: u64, rank_cap: usize) -> Result<BigInt, VorError> {
    let sigma = sigma_zero(form, rank_cap)?;
    let l0 = sigma.denominator_lcm();
    if l0 > BigInt::from(bound) {
        return Err(VorError::NoIntegralScale);
    }
    Ok(l0)
}

/// The translated-cell complex of Σ(0): cells `Σ(c) = Σ(0) + m(c)` for `c`
/// in a window, with the face lattice of the base cell.
#[derive(Debug, Clone)]
pub struct VorComplex {
    pub form: PolForm,
    pub sigma: LatticePolytope,
    pub lattice: FaceLattice,
    pub window: i64,
    pub cells: BTreeMap<Vec<BigInt>, LatticePolytope>,
}

/// Result of checking one lemma item over a window.
#[derive(Debug, Clone)]
pub struct ItemReport {
    pub item: u8,
    pub cases: usize,
    pub failures: Vec<String>,
}

/// Report for the five convexity-lemma items.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub window: i64,
    pub items: Vec<ItemReport>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.failures.is_empty())
    }
}

/// Report of the covering/disjointness invariants over a window.
#[derive(Debug, Clone)]
pub struct CoveringReport {
    pub point_window: i64,
    pub points_checked: usize,
    pub uncovered: Vec<Vec<BigInt>>,
    pub cell_pairs_checked: usize,
    pub overlapping_interiors: Vec<(Vec<BigInt>, Vec<BigInt>)>,
}

impl CoveringReport {
    pub fn all_pass(&self) -> bool {
        self.uncovered.is_empty() && self.overlapping_interiors.is_empty()
    }
}

impl VorComplex {
    pub fn build(form: PolForm, window: i64, rank_cap: usize) -> Result<Self, VorError> {
        assert!(window >= 1, "window must be positive");
        let sigma = sigma_zero(&form, rank_cap)?;
        let lattice = face_lattice(&sigma);
        let mut cells = BTreeMap::new();
        for c in box_vectors(form.rank(), window) {
            let t = form.translate_vec(&c);
            cells.insert(c, sigma.translate_int(&t));
        }
        Ok(VorComplex { form, sigma, lattice, window, cells })
    }

    /// The cell `Σ(c)` for arbitrary `c` (not restricted to the window).
    pub fn cell(&self, c: &[BigInt]) -> LatticePolytope {
        self.sigma.translate_int(&self.form.translate_vec(c))
    }

    /// `|c|∞`-bound guaranteeing that every cell containing a point of norm²
    /// ≤ `alpha_sq` has index inside the bound.
    fn cell_bound(&self, alpha_sq: &BigRational) -> BigInt {
        let rho_sq = self.sigma.max_vertex_norm_sq();
        let lam = self.form.eigen_floor();
        // |c|∞ ≤ (|α|₂ + ρ)/(2λ) and (a+b)² ≤ 2a² + 2b².
        let b_sq = (alpha_sq + rho_sq)
            / (BigRational::from(BigInt::from(2)) * &lam * &lam);
        ceil_sqrt(&b_sq)
    }

    /// Indices of all cells containing every one of `points`, enumerated over
    /// a certified-sufficient box (independent of the display window).
    fn star_cells_unchecked(&self, points: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
        assert!(!points.is_empty(), "star of nothing");
        let max_sq = points.iter().map(|p| norm_sq_rat(p)).max().unwrap();
        let bound = self.cell_bound(&max_sq);
        let bound_i64 = i64::try_from(&bound).expect("star bound fits in i64");
        let mut out = Vec::new();
        for c in box_vectors(self.form.rank(), bound_i64) {
            let t = self.form.translate_vec(&c);
            let tr: Vec<BigRational> =
                t.iter().map(|a| BigRational::from(a.clone())).collect();
            let inside = points.iter().all(|p| {
                let shifted: Vec<BigRational> =
                    p.iter().zip(&tr).map(|(a, b)| a - b).collect();
                self.sigma.contains(&shifted)
            });
            if inside {
                out.push(c);
            }
        }
        out
    }

    /// Star of a point or face given by `points`: the cells of the complex
    /// containing it. Errors when the certified search box exceeds the window.
    pub fn star(&self, points: &[Vec<BigRational>]) -> Result<Vec<Vec<BigInt>>, VorError> {
        assert!(!points.is_empty(), "star of nothing");
        let max_sq = points.iter().map(|p| norm_sq_rat(p)).max().unwrap();
        if self.cell_bound(&max_sq) > BigInt::from(self.window) {
            return Err(VorError::OutsideWindow);
        }
        Ok(self.star_cells_unchecked(points))
    }

    /// Whether `Σ(c)` meets `Σ(0)` (memoized by the caller).
    fn adjacent(&self, c: &[BigInt], memo: &mut BTreeMap<Vec<BigInt>, bool>) -> bool {
        if let Some(&v) = memo.get(c) {
            return v;
        }
        let v = self.cell(c).meets(&self.sigma);
        memo.insert(c.to_vec(), v);
        v
    }

    /// Exhaustive check of the five convexity-lemma items over `|w|∞ ≤ window`.
    pub fn containment_report(&self, window: i64) -> LemmaReport {
        let g = self.form.rank();
        let two = self.sigma.dilate(&BigInt::from(2));
        let three = self.sigma.dilate(&BigInt::from(3));
        let four = self.sigma.dilate(&BigInt::from(4));
        let mut memo: BTreeMap<Vec<BigInt>, bool> = BTreeMap::new();

        // star index sets per face of Σ(0)
        let face_stars: Vec<Vec<Vec<BigInt>>> = self
            .lattice
            .faces
            .iter()
            .map(|f| {
                let pts = self.lattice.face_points(&self.sigma, f);
                self.star_cells_unchecked(&pts)
            })
            .collect();

        let ws = box_vectors(g, window);
        let mut items = Vec::new();

        // (1) Σ(w) ∩ Σ(0) ≠ ∅ ⇒ m(w) ∈ 2Σ(0)
        let mut it1 = ItemReport { item: 1, cases: 0, failures: Vec::new() };
        for w in &ws {
            if self.adjacent(w, &mut memo) {
                it1.cases += 1;
                if !two.contains_int(&self.form.translate_vec(w)) {
                    it1.failures.push(format!("w={:?}: m(w) outside 2Σ(0)", w));
                }
            }
        }
        items.push(it1);

        // (2) Star(α) ⊂ 3Σ(0) for every face α
        let mut it2 = ItemReport { item: 2, cases: 0, failures: Vec::new() };
        for (f, star) in self.lattice.faces.iter().zip(&face_stars) {
            for v in star {
                it2.cases += 1;
                let t = self.form.translate_vec(v);
                let ok = self.sigma.vertices.iter().all(|vert| {
                    let shifted: Vec<BigRational> = vert
                        .iter()
                        .zip(&t)
                        .map(|(a, b)| a + BigRational::from(b.clone()))
                        .collect();
                    three.contains(&shifted)
                });
                if !ok {
                    it2.failures
                        .push(format!("face {:?}: cell {:?} outside 3Σ(0)", f.verts, v));
                }
            }
        }
        items.push(it2);

        // (3) Σ(w) ∩ Star(α) ≠ ∅ ⇒ m(w) ∈ 4Σ(0)
        let mut it3 = ItemReport { item: 3, cases: 0, failures: Vec::new() };
        for (f, star) in self.lattice.faces.iter().zip(&face_stars) {
            for w in &ws {
                let meets_star =
                    star.iter().any(|v| self.adjacent(&vec_sub(w, v), &mut memo));
                if meets_star {
                    it3.cases += 1;
                    if !four.contains_int(&self.form.translate_vec(w)) {
                        it3.failures.push(format!(
                            "face {:?}, w={:?}: m(w) outside 4Σ(0)",
                            f.verts, w
                        ));
                    }
                }
            }
        }
        items.push(it3);

        // (4) (m(w) + Star(α)) ∩ Star(α) ≠ ∅ ⇒ m(w) ∈ 4Σ(0)
        let mut it4 = ItemReport { item: 4, cases: 0, failures: Vec::new() };
        for (f, star) in self.lattice.faces.iter().zip(&face_stars) {
            for w in &ws {
                let meets = star.iter().any(|v| {
                    star.iter()
                        .any(|v2| self.adjacent(&vec_sub(&vec_add(w, v), v2), &mut memo))
                });
                if meets {
                    it4.cases += 1;
                    if !four.contains_int(&self.form.translate_vec(w)) {
                        it4.failures.push(format!(
                            "face {:?}, w={:?}: m(w) outside 4Σ(0)",
                            f.verts, w
                        ));
                    }
                }
            }
        }
        items.push(it4);

        // (5) (m(mw) + Star(α)) ∩ Star(α) ≠ ∅ for some m ≥ 4 ⇒ w = 0
        let mut it5 = ItemReport { item: 5, cases: 0, failures: Vec::new() };
        let rho_sq = self.sigma.max_vertex_norm_sq();
        let lam = self.form.eigen_floor();
        for w in &ws {
            if w.iter().all(|x| x.is_zero()) {
                continue;
            }
            it5.cases += 1;
            for (f, star) in self.lattice.faces.iter().zip(&face_stars) {
                // adjacency needs |mw + v − v'|₂ ≤ ρ/λ, so m is bounded:
                // m ≤ ρ/λ + max|v−v'|₂ and m² ≤ 2ρ²/λ² + 8·max|v|₂².
                let vmax_sq = star
                    .iter()
                    .map(|v| BigRational::from(norm_sq_int(v)))
                    .max()
                    .unwrap_or_else(BigRational::zero);
                let m_sq = BigRational::from(BigInt::from(2)) * &rho_sq / (&lam * &lam)
                    + BigRational::from(BigInt::from(8)) * vmax_sq;
                let m_max = ceil_sqrt(&m_sq);
                let mut m = BigInt::from(4);
                while m <= m_max {
                    let mw = vec_scale(&m, w);
                    let hit = star.iter().any(|v| {
                        star.iter().any(|v2| {
                            self.adjacent(&vec_sub(&vec_add(&mw, v), v2), &mut memo)
                        })
                    });
                    if hit {
                        it5.failures.push(format!(
                            "face {:?}, w={:?}, m={}: translate still meets star",
                            f.verts, w, m
                        ));
                    }
                    m += 1;
                }
            }
        }
        items.push(it5);

        LemmaReport { window, items }
    }

    /// Covering and interior-disjointness of cells over a window of lattice
    /// points and the complex's own cell window.
    pub fn covering_report(&self, point_window: i64) -> CoveringReport {
        let g = self.form.rank();
        let mut uncovered = Vec::new();
        let mut points_checked = 0;
        for x in box_vectors(g, point_window) {
            points_checked += 1;
            let xr: Vec<BigRational> =
                x.iter().map(|a| BigRational::from(a.clone())).collect();
            if self.star_cells_unchecked(&[xr]).is_empty() {
                uncovered.push(x);
            }
        }
        let idx: Vec<&Vec<BigInt>> = self.cells.keys().collect();
        let mut overlapping = Vec::new();
        let mut pairs = 0;
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                pairs += 1;
                let a = &self.cells[idx[i]];
                let b = &self.cells[idx[j]];
                if let Some(meet) = a.intersect(b) {
                    if meet.affine_dim() == g {
                        overlapping.push((idx[i].clone(), idx[j].clone()));
                    }
                }
            }
        }
        CoveringReport {
            point_window,
            points_checked,
            uncovered,
            cell_pairs_checked: pairs,
            overlapping_interiors: overlapping,
        }
    }

    /// All decompositions `x = γ + m(z)` with `γ ∈ Σ(0)`, as `(z, γ)` pairs.
    pub fn decompositions(&self, x: &[BigInt]) -> Vec<(Vec<BigInt>, Vec<BigInt>)> {
        let xr: Vec<BigRational> =
            x.iter().map(|a| BigRational::from(a.clone())).collect();
        self.star_cells_unchecked(&[xr])
            .into_iter()
            .map(|z| {
                let gamma = vec_sub(x, &self.form.translate_vec(&z));
                (z, gamma)
            })
            .collect()
    }

    /// The quadratic function `D(x) = E(z) + z(γ)` for any decomposition
    /// `x = γ + m(z)`, `γ ∈ Σ(0)`; checked independent of the choice.
    pub fn d_function(&self, x: &[BigInt]) -> Result<BigInt, VorError> {
        let decs = self.decompositions(x);
        if decs.is_empty() {
            return Err(VorError::CoveringViolated);
        }
        let values: Vec<BigRational> = decs
            .iter()
            .map(|(z, gamma)| self.form.eval(z) + BigRational::from(dot(z, gamma)))
            .collect();
        assert!(
            values.windows(2).all(|w| w[0] == w[1]),
            "D value depends on the decomposition of {:?}",
            x
        );
        let v = values.into_iter().next().unwrap();
        assert!(v.is_integer(), "D is integral only for integral Σ(0)");
        Ok(v.to_integer())
    }
}
