//! Extension of the symbols (τ, ψ) from Y to larger lattices.
//!
//! `extend_to_dual` pushes τ out along β: Y → X∨ by Smith-normal-form root
//! extraction, producing τᵉ on X∨ × X and ψᵉ(u) = τᵉ(u, μ(u)).
//!
//! `extend_to_x` runs the inductive filtration over the Smith normal form of
//! φ itself, adjoining one new basis vector x'_s per step with e_s·x'_s in
//! the previous sublattice, and solves the two constraints
//! ψᵉˣ(x'_s)² = τᵉˣ(x'_s, x'_s) and ψᵉˣ(x'_s)^{e_s²} = ψ(y'_s) at each step.
//!
//! All roots use the + sign convention; an even root of a negative element is
//! recorded as a ζ-twist annotation rather than an error.

use crate::{validate, DegenError, DegenerationDatum};
use lattice_core::{derive_beta_mu, int_inverse, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use valued_scalars::ValuedScalar;

/// Annotation that a square (or higher even) root of a negative element was
/// taken with the + convention; exact bookkeeping would twist the datum by a
/// quadratic character ζ on the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaTwist {
    pub context: String,
}

/// τᵉ and ψᵉ on X∨, together with the derived maps β, μ and the index N.
#[derive(Clone, Debug)]
pub struct ExtendedDatum {
    base: DegenerationDatum,
    beta: IntMatrix,
    n: BigInt,
    mu: IntMatrix,
    /// Columns are the basis (u_i) of X∨ with e_i·u_i = β(y'_i).
    u_basis: IntMatrix,
    /// Inverse change of basis: standard dual coordinates → (u_i) coordinates.
    u_coords_mat: IntMatrix,
    /// Columns are the basis (y'_i) of Y.
    y_basis: IntMatrix,
    /// Elementary divisors e_1 | e_2 | … of β.
    divisors: Vec<BigInt>,
    /// τᵉ(u_i, x_k).
    tau_e_table: Vec<Vec<ValuedScalar>>,
    e_zeta: BigInt,
    twists: Vec<ZetaTwist>,
}

/// τᵉˣ and ψᵉˣ on all of X, stored on the adapted basis (x'_s) coming from
/// the Smith normal form of φ.
#[derive(Clone, Debug)]
pub struct FullExtension {
    base: DegenerationDatum,
    /// Columns are the adapted basis (x'_s) of X in standard coordinates.
    x_basis: IntMatrix,
    /// Standard X coordinates → (x'_s) coordinates.
    x_coords_mat: IntMatrix,
    /// Columns are the basis (y'_s) of Y with φ(y'_s) = e_s·x'_s.
    y_basis: IntMatrix,
    /// Elementary divisors e_1 | e_2 | … of φ.
    divisors: Vec<BigInt>,
    /// τᵉˣ(x'_s, x'_t), symmetric.
    tau_ex_table: Vec<Vec<ValuedScalar>>,
    /// ψᵉˣ(x'_s).
    psi_ex_basis: Vec<ValuedScalar>,
    e_zeta: BigInt,
    twists: Vec<ZetaTwist>,
}

fn validate_gate(d: &DegenerationDatum) -> Result<(), DegenError> {
    let report = validate(d);
    if !report.pass() {
        return Err(DegenError::Invalid(report.failure_summary()));
    }
    Ok(())
}

/// 1/e-th root with the + convention: a sign obstruction is recorded as a
/// ζ-twist annotation and the root of the absolute value is returned.
fn root_with_twist(
    v: &ValuedScalar,
    order: &BigInt,
    ctx: impl FnOnce() -> String,
    twists: &mut Vec<ZetaTwist>,
) -> ValuedScalar {
    let exp = BigRational::new(BigInt::one(), order.clone());
    match v.pow_rational(&exp) {
        Ok(s) => s,
        Err(_) => {
            twists.push(ZetaTwist { context: ctx() });
            v.mul(&ValuedScalar::minus_one())
                .pow_rational(&exp)
                .expect("positive after sign strip")
        }
    }
}

fn lcm_big(a: BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    int_inverse(m)
        .expect("matrix is invertible")
        .to_integer()
        .expect("unimodular inverse is integral")
}

fn basis_vec(g: usize, i: usize) -> Vec<BigInt> {
    (0..g).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }).collect()
}

/// Extend (τ, ψ) to the dual lattice along β(y) = B(y, ·).
pub fn extend_to_dual(d: &DegenerationDatum) -> Result<ExtendedDatum, DegenError> {
    validate_gate(d)?;
    let g = d.rank();
    let b = d.b_int().ok_or(DegenError::NonIntegralPairing)?;
    let bm = derive_beta_mu(d.phi(), &b)?;
    let snf = smith_normal_form(&bm.beta);
    // U β V = D with u_i = U⁻¹e_i, y'_i = V e_i, so e_i·u_i = β(y'_i).
    let u_basis = unimodular_inverse(&snf.u);
    let mut twists = Vec::new();
    let mut table = Vec::with_capacity(g);
    for i in 0..g {
        let ypi = snf.v.col(i);
        let ei = snf.divisors[i].clone();
        let mut row = Vec::with_capacity(g);
        for k in 0..g {
            let base_val = d.tau_pair(&ypi, &basis_vec(g, k));
            row.push(root_with_twist(
                &base_val,
                &ei,
                || format!("tau_e(u_{i}, x_{k}): even root of a negative element"),
                &mut twists,
            ));
        }
        table.push(row);
    }
    let mut e_zeta = BigInt::one();
    for row in &table {
        for s in row {
            e_zeta = lcm_big(e_zeta, &s.ramification_index());
        }
    }
    Ok(ExtendedDatum {
        base: d.clone(),
        beta: bm.beta,
        n: bm.n,
        mu: bm.mu,
        u_coords_mat: snf.u.clone(),
        u_basis,
        y_basis: snf.v,
        divisors: snf.divisors,
        tau_e_table: table,
        e_zeta,
        twists,
    })
}

impl ExtendedDatum {
    pub fn base(&self) -> &DegenerationDatum {
        &self.base
    }

    /// β as a matrix X∨-coordinates × Y-coordinates (β = Bᵗ).
    pub fn beta(&self) -> &IntMatrix {
        &self.beta
    }

    /// N = |X∨ / β(Y)|.
    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// μ: X∨ → X with μ∘β = N·φ.
    pub fn mu(&self) -> &IntMatrix {
        &self.mu
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Basis (u_i) of X∨ as columns, in standard dual coordinates.
    pub fn u_basis(&self) -> &IntMatrix {
        &self.u_basis
    }

    /// Basis (y'_i) of Y as columns.
    pub fn y_basis(&self) -> &IntMatrix {
        &self.y_basis
    }

    /// Ramification index: lcm of the exponent denominators introduced.
    pub fn e_zeta(&self) -> &BigInt {
        &self.e_zeta
    }

    pub fn twists(&self) -> &[ZetaTwist] {
        &self.twists
    }

    /// τᵉ(u_i, x_k) on the adapted basis.
    pub fn tau_e_basis(&self, i: usize, k: usize) -> &ValuedScalar {
        &self.tau_e_table[i][k]
    }

    pub fn beta_image(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.beta.mul_vec(y)
    }

    pub fn mu_image(&self, u: &[BigInt]) -> Vec<BigInt> {
        self.mu.mul_vec(u)
    }

    /// τᵉ(u, x) for arbitrary u ∈ X∨ (standard dual coordinates) and x ∈ X.
    pub fn tau_e(&self, u: &[BigInt], x: &[BigInt]) -> ValuedScalar {
        let g = self.base.rank();
        assert_eq!(u.len(), g, "u has wrong length");
        assert_eq!(x.len(), g, "x has wrong length");
        let c = self.u_coords_mat.mul_vec(u);
        let mut acc = ValuedScalar::one();
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (k, xk) in x.iter().enumerate() {
                if xk.is_zero() {
                    continue;
                }
                acc = acc.mul(&self.tau_e_table[i][k].pow_big(&(ci * xk)));
            }
        }
        acc
    }

    /// ψᵉ(u) = τᵉ(u, μ(u)).
    pub fn psi_e(&self, u: &[BigInt]) -> ValuedScalar {
        self.tau_e(u, &self.mu_image(u))
    }

    /// Derived view τ♯ = τᵉ.
    pub fn tau_sharp(&self, u: &[BigInt], x: &[BigInt]) -> ValuedScalar {
        self.tau_e(u, x)
    }

    /// Derived view (ψ♯)² = (ψᵉ)^{2N}.
    pub fn psi_sharp_squared(&self, u: &[BigInt]) -> ValuedScalar {
        self.psi_e(u).pow_big(&(BigInt::from(2) * &self.n))
    }
}

/// Extend (τ, ψ) from Y to all of X along φ.
pub fn extend_to_x(d: &DegenerationDatum) -> Result<FullExtension, DegenError> {
    validate_gate(d)?;
    let g = d.rank();
    let snf = smith_normal_form(d.phi());
    // U φ V = D with x'_s = U⁻¹e_s, y'_s = V e_s, so φ(y'_s) = e_s·x'_s.
    let x_basis = unimodular_inverse(&snf.u);
    let mut twists = Vec::new();
    let mut table = vec![vec![ValuedScalar::one(); g]; g];
    let mut psi_basis = Vec::with_capacity(g);
    for s in 0..g {
        let yps = snf.v.col(s);
        let es = snf.divisors[s].clone();
        // Step s adjoins x'_s: τᵉˣ(x'_s, x'_t)^{e_s} = τ(y'_s, x'_t).
        for t in 0..=s {
            let base_val = d.tau_pair(&yps, &x_basis.col(t));
            let entry = root_with_twist(
                &base_val,
                &es,
                || format!("tau_ex(x'_{s}, x'_{t}): even root of a negative element"),
                &mut twists,
            );
            table[s][t] = entry.clone();
            table[t][s] = entry;
        }
        // ψᵉˣ(x'_s) solves ψᵉˣ(x'_s)² = τᵉˣ(x'_s, x'_s) and
        // ψᵉˣ(x'_s)^{e_s²} = ψ(y'_s): magnitude is the 2e_s²-th root of
        // τ(y'_s, φ(y'_s)) = ψ(y'_s)², sign is forced for odd e_s and fixed
        // to + for even e_s.
        let q = d.tau_y_phi(&yps, &yps);
        let order = BigInt::from(2) * &es * &es;
        let magnitude = root_with_twist(
            &q,
            &order,
            || format!("psi_ex(x'_{s}): even root of a negative element"),
            &mut twists,
        );
        let psi_ys_sign = d.psi(&yps)?.sign();
        let entry = if es.is_odd() {
            if psi_ys_sign == -1 {
                magnitude.mul(&ValuedScalar::minus_one())
            } else {
                magnitude
            }
        } else {
            if psi_ys_sign == -1 {
                twists.push(ZetaTwist {
                    context: format!(
                        "psi_ex(x'_{s}): e_{s} even but ψ(y'_{s}) negative; χ-twist required"
                    ),
                });
            }
            magnitude
        };
        psi_basis.push(entry);
    }
    let mut e_zeta = BigInt::one();
    for row in &table {
        for s in row {
            e_zeta = lcm_big(e_zeta, &s.ramification_index());
        }
    }
    for s in &psi_basis {
        e_zeta = lcm_big(e_zeta, &s.ramification_index());
    }
    Ok(FullExtension {
        base: d.clone(),
        x_coords_mat: snf.u.clone(),
        x_basis,
        y_basis: snf.v,
        divisors: snf.divisors,
        tau_ex_table: table,
        psi_ex_basis: psi_basis,
        e_zeta,
        twists,
    })
}

impl FullExtension {
    pub fn base(&self) -> &DegenerationDatum {
        &self.base
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn x_basis(&self) -> &IntMatrix {
        &self.x_basis
    }

    pub fn y_basis(&self) -> &IntMatrix {
        &self.y_basis
    }

    pub fn e_zeta(&self) -> &BigInt {
        &self.e_zeta
    }

    pub fn twists(&self) -> &[ZetaTwist] {
        &self.twists
    }

    /// τᵉˣ(x, z) for x, z ∈ X in standard coordinates.
    pub fn tau_ex(&self, x: &[BigInt], z: &[BigInt]) -> ValuedScalar {
        let g = self.base.rank();
        assert_eq!(x.len(), g, "x has wrong length");
        assert_eq!(z.len(), g, "z has wrong length");
        let c = self.x_coords_mat.mul_vec(x);
        let e = self.x_coords_mat.mul_vec(z);
        let mut acc = ValuedScalar::one();
        for (s, cs) in c.iter().enumerate() {
            if cs.is_zero() {
                continue;
            }
            for (t, et) in e.iter().enumerate() {
                if et.is_zero() {
                    continue;
                }
                acc = acc.mul(&self.tau_ex_table[s][t].pow_big(&(cs * et)));
            }
        }
        acc
    }

    /// ψᵉˣ(x) by quadratic closure over the adapted basis:
    /// ψᵉˣ(Σ c_s x'_s) = Π ψᵉˣ(x'_s)^{c_s²} · Π_{s<t} τᵉˣ(x'_s, x'_t)^{c_s c_t}.
    pub fn psi_ex(&self, x: &[BigInt]) -> ValuedScalar {
        let g = self.base.rank();
        assert_eq!(x.len(), g, "x has wrong length");
        let c = self.x_coords_mat.mul_vec(x);
        let mut acc = ValuedScalar::one();
        for (s, cs) in c.iter().enumerate() {
            if cs.is_zero() {
                continue;
            }
            acc = acc.mul(&self.psi_ex_basis[s].pow_big(&(cs * cs)));
            for (t, ct) in c.iter().enumerate().skip(s + 1) {
                if ct.is_zero() {
                    continue;
                }
                acc = acc.mul(&self.tau_ex_table[s][t].pow_big(&(cs * ct)));
            }
        }
        acc
    }
}
