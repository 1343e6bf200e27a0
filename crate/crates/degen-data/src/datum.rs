//! The degeneration datum (X, Y, φ, τ, ψ) with its abelian descriptor, plus
//! JSON (de)serialization with bit-exact rationals.

use crate::DegenError;
use lattice_core::{IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};
use std::str::FromStr;
use valued_scalars::ValuedScalar;

/// Dimension data of the abelian part: dim A and h⁰ of the polarization on A.
/// A rank-0 abelian part forces h⁰ = 1 (the trivial bundle on a point).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDescriptor {
    pub dim_a: u32,
    pub h0_m: BigInt,
}

impl Default for AbelianDescriptor {
    fn default() -> Self {
        AbelianDescriptor { dim_a: 0, h0_m: BigInt::one() }
    }
}

/// Degeneration datum for a maximally degenerating family of rank g:
/// lattices X ≅ Y ≅ ℤ^g in fixed bases, an injective map φ: Y → X (columns
/// φ(y_j)), a bilinear symbol table τ(y_i, x_j) of valued scalars, and the
/// quadratic symbol ψ determined by ψ(y)² = τ(y, φ(y)) together with a sign
/// choice per basis vector. An optional abelian descriptor carries the
/// dimension bookkeeping for non-maximal degenerations.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationDatum {
    rank: usize,
    phi: IntMatrix,
    tau: Vec<Vec<ValuedScalar>>,
    psi_signs: Vec<i8>,
    abelian: AbelianDescriptor,
}

impl DegenerationDatum {
    pub fn new(
        phi: IntMatrix,
        tau: Vec<Vec<ValuedScalar>>,
        psi_signs: Vec<i8>,
        abelian: AbelianDescriptor,
    ) -> Result<Self, DegenError> {
        let g = phi.rows;
        if !phi.is_square() {
            return Err(DegenError::Shape("phi must be square".into()));
        }
        if tau.len() != g || tau.iter().any(|r| r.len() != g) {
            return Err(DegenError::Shape(format!("tau table must be {g}x{g}")));
        }
        if psi_signs.len() != g {
            return Err(DegenError::Shape(format!("psi_signs must have length {g}")));
        }
        if psi_signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(DegenError::Shape("psi_signs entries must be ±1".into()));
        }
        if abelian.h0_m <= BigInt::zero() {
            return Err(DegenError::Shape("abelian h0 must be positive".into()));
        }
        Ok(DegenerationDatum { rank: g, phi, tau, psi_signs, abelian })
    }

    /// Pure t-power datum τ(y_i, x_j) = t^{B_ij} from an integer pairing matrix.
    pub fn from_pairing(phi: IntMatrix, b: &IntMatrix) -> Result<Self, DegenError> {
        let g = phi.rows;
        if !b.is_square() || b.rows != g {
            return Err(DegenError::Shape("pairing matrix must match phi".into()));
        }
        let tau = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| ValuedScalar::t_pow(BigRational::from(b.get(i, j).clone())))
                    .collect()
            })
            .collect();
        DegenerationDatum::new(phi, tau, vec![1; g], AbelianDescriptor::default())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn phi(&self) -> &IntMatrix {
        &self.phi
    }

    pub fn abelian(&self) -> &AbelianDescriptor {
        &self.abelian
    }

    pub fn psi_signs(&self) -> &[i8] {
        &self.psi_signs
    }

    /// τ(y_i, x_j) on basis vectors.
    pub fn tau_basis(&self, i: usize, j: usize) -> &ValuedScalar {
        &self.tau[i][j]
    }

    /// φ(y) in X coordinates.
    pub fn phi_image(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.phi.mul_vec(y)
    }

    /// Bilinear extension τ(y, x) = Π τ(y_i, x_j)^{y_i x_j}.
    pub fn tau_pair(&self, y: &[BigInt], x: &[BigInt]) -> ValuedScalar {
        assert_eq!(y.len(), self.rank, "y has wrong length");
        assert_eq!(x.len(), self.rank, "x has wrong length");
        let mut acc = ValuedScalar::one();
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (j, xj) in x.iter().enumerate() {
                if xj.is_zero() {
                    continue;
                }
                acc = acc.mul(&self.tau[i][j].pow_big(&(yi * xj)));
            }
        }
        acc
    }

    /// τ(y, φ(z)) — the symmetric pairing on Y × Y.
    pub fn tau_y_phi(&self, y: &[BigInt], z: &[BigInt]) -> ValuedScalar {
        self.tau_pair(y, &self.phi_image(z))
    }

    /// ψ(y_i) = sign_i · τ(y_i, φ(y_i))^{1/2}.
    pub fn psi_basis(&self, i: usize) -> Result<ValuedScalar, DegenError> {
        let e: Vec<BigInt> = (0..self.rank)
            .map(|k| if k == i { BigInt::one() } else { BigInt::zero() })
            .collect();
        let tii = self.tau_y_phi(&e, &e);
        let root = tii.root(2).map_err(|_| DegenError::PsiObstruction(i))?;
        Ok(if self.psi_signs[i] == -1 { root.mul(&ValuedScalar::minus_one()) } else { root })
    }

    /// ψ on all of Y by quadratic closure:
    /// ψ(Σ cᵢyᵢ) = Π ψ(yᵢ)^{cᵢ²} · Π_{i<j} τ(yᵢ, φ(yⱼ))^{cᵢcⱼ}.
    /// Satisfies ψ(y)² = τ(y, φ(y)) and ψ(y+z) = ψ(y)ψ(z)τ(y, φ(z)).
    pub fn psi(&self, y: &[BigInt]) -> Result<ValuedScalar, DegenError> {
        assert_eq!(y.len(), self.rank, "y has wrong length");
        let mut acc = ValuedScalar::one();
        let basis = |i: usize| -> Vec<BigInt> {
            (0..self.rank).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }).collect()
        };
        for (i, ci) in y.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            acc = acc.mul(&self.psi_basis(i)?.pow_big(&(ci * ci)));
            for (j, cj) in y.iter().enumerate().skip(i + 1) {
                if cj.is_zero() {
                    continue;
                }
                let tij = self.tau_y_phi(&basis(i), &basis(j));
                acc = acc.mul(&tij.pow_big(&(ci * cj)));
            }
        }
        Ok(acc)
    }

    /// Valuation matrix B with B_ij = v_t τ(y_i, x_j).
    pub fn b_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zero(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                m.set(i, j, self.tau[i][j].valuation().clone());
            }
        }
        m
    }

    /// B as an integer matrix, when the pairing valuations are all integral.
    pub fn b_int(&self) -> Option<IntMatrix> {
        self.b_matrix().to_integer()
    }

    /// B∘φ as a rational matrix: (B∘φ)_ij = v_t τ(y_i, φ(y_j)).
    pub fn pairing_phi(&self) -> RatMatrix {
        self.b_matrix().mul(&self.phi.to_rational())
    }

    /// The datum of the m-th tensor power: φ ↦ mφ, τ unchanged, ψ ↦ ψ^m.
    /// On the sign data: ψ_m(y_i)² = τ(y_i, mφ(y_i)) = (ψ(y_i)²)^m, and the
    /// compatible sign choice is sign_i^m.
    pub fn power(&self, m: u32) -> DegenerationDatum {
        assert!(m >= 1, "power must be positive");
        let signs = if m % 2 == 0 {
            vec![1; self.rank]
        } else {
            self.psi_signs.clone()
        };
        DegenerationDatum {
            rank: self.rank,
            phi: self.phi.scale(&BigInt::from(m)),
            tau: self.tau.clone(),
            psi_signs: signs,
            abelian: self.abelian.clone(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, DegenError> {
        let v: Value = serde_json::from_str(s).map_err(|e| DegenError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self, DegenError> {
        let obj = v.as_object().ok_or_else(|| DegenError::Json("expected object".into()))?;
        let rank = obj
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| DegenError::Json("missing integer field 'rank'".into()))?
            as usize;
        let phi = parse_int_matrix(
            obj.get("phi").ok_or_else(|| DegenError::Json("missing field 'phi'".into()))?,
            rank,
            "phi",
        )?;
        let vals = parse_rat_rows(
            obj.get("tau_valuations")
                .ok_or_else(|| DegenError::Json("missing field 'tau_valuations'".into()))?,
            rank,
            "tau_valuations",
        )?;
        let units: Vec<Vec<ValuedScalar>> = match obj.get("tau_units") {
            None | Some(Value::Null) => {
                vec![vec![ValuedScalar::one(); rank]; rank]
            }
            Some(u) => parse_unit_rows(u, rank)?,
        };
        let mut tau = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut row = Vec::with_capacity(rank);
            for j in 0..rank {
                row.push(units[i][j].mul(&ValuedScalar::t_pow(vals[i][j].clone())));
            }
            tau.push(row);
        }
        let psi_signs = match obj.get("psi_signs") {
            None | Some(Value::Null) => vec![1; rank],
            Some(Value::Array(a)) => {
                let mut out = Vec::with_capacity(a.len());
                for e in a {
                    match e.as_i64() {
                        Some(1) => out.push(1),
                        Some(-1) => out.push(-1),
                        _ => return Err(DegenError::Json("psi_signs entries must be ±1".into())),
                    }
                }
                out
            }
            _ => return Err(DegenError::Json("psi_signs must be an array".into())),
        };
        let abelian = match obj.get("abelian") {
            None | Some(Value::Null) => AbelianDescriptor::default(),
            Some(Value::Object(a)) => {
                let dim = a
                    .get("dim")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| DegenError::Json("abelian.dim must be an integer".into()))?;
                let h0 = a
                    .get("h0")
                    .map(|h| parse_bigint(h, "abelian.h0"))
                    .transpose()?
                    .unwrap_or_else(BigInt::one);
                AbelianDescriptor { dim_a: dim as u32, h0_m: h0 }
            }
            _ => return Err(DegenError::Json("abelian must be an object".into())),
        };
        DegenerationDatum::new(phi, tau, psi_signs, abelian)
    }

    pub fn to_json_value(&self) -> Value {
        let g = self.rank;
        let mut obj = Map::new();
        obj.insert("rank".into(), Value::from(g as u64));
        obj.insert(
            "phi".into(),
            Value::Array(
                (0..g)
                    .map(|i| {
                        Value::Array(
                            (0..g).map(|j| render_bigint(self.phi.get(i, j))).collect(),
                        )
                    })
                    .collect(),
            ),
        );
        obj.insert(
            "tau_valuations".into(),
            Value::Array(
                (0..g)
                    .map(|i| {
                        Value::Array(
                            (0..g)
                                .map(|j| Value::String(render_rational(self.tau[i][j].valuation())))
                                .collect(),
                        )
                    })
                    .collect(),
            ),
        );
        let unit_of = |i: usize, j: usize| {
            self.tau[i][j].mul(&ValuedScalar::t_pow(-self.tau[i][j].valuation().clone()))
        };
        if (0..g).any(|i| (0..g).any(|j| !unit_of(i, j).is_one())) {
            obj.insert(
                "tau_units".into(),
                Value::Array(
                    (0..g)
                        .map(|i| {
                            Value::Array(
                                (0..g)
                                    .map(|j| Value::String(unit_of(i, j).to_string()))
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
            );
        }
        if self.psi_signs.iter().any(|s| *s == -1) {
            obj.insert(
                "psi_signs".into(),
                Value::Array(self.psi_signs.iter().map(|s| Value::from(*s as i64)).collect()),
            );
        }
        let mut ab = Map::new();
        ab.insert("dim".into(), Value::from(self.abelian.dim_a as u64));
        ab.insert("h0".into(), render_bigint(&self.abelian.h0_m));
        obj.insert("abelian".into(), Value::Object(ab));
        Value::Object(obj)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }
}

/// Parse a rational from a JSON number (integer) or a "p/q" string.
pub(crate) fn parse_rational(v: &Value, ctx: &str) -> Result<BigRational, DegenError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|k| BigRational::from(BigInt::from(k)))
            .ok_or_else(|| DegenError::Json(format!("{ctx}: non-integer JSON number"))),
        Value::String(s) => BigRational::from_str(s.trim())
            .map_err(|_| DegenError::Json(format!("{ctx}: bad rational '{s}'"))),
        _ => Err(DegenError::Json(format!("{ctx}: expected number or 'p/q' string"))),
    }
}

pub(crate) fn parse_bigint(v: &Value, ctx: &str) -> Result<BigInt, DegenError> {
    let q = parse_rational(v, ctx)?;
    if !q.is_integer() {
        return Err(DegenError::Json(format!("{ctx}: expected an integer")));
    }
    Ok(q.to_integer())
}

fn parse_int_matrix(v: &Value, g: usize, ctx: &str) -> Result<IntMatrix, DegenError> {
    let rows = v
        .as_array()
        .ok_or_else(|| DegenError::Json(format!("{ctx}: expected array of rows")))?;
    if rows.len() != g {
        return Err(DegenError::Json(format!("{ctx}: expected {g} rows")));
    }
    let mut out = Vec::with_capacity(g);
    for (i, r) in rows.iter().enumerate() {
        let cells = r
            .as_array()
            .ok_or_else(|| DegenError::Json(format!("{ctx}: row {i} is not an array")))?;
        if cells.len() != g {
            return Err(DegenError::Json(format!("{ctx}: row {i} must have {g} entries")));
        }
        let mut row = Vec::with_capacity(g);
        for c in cells {
            row.push(parse_bigint(c, ctx)?);
        }
        out.push(row);
    }
    Ok(IntMatrix::from_bigint_rows(out))
}

fn parse_rat_rows(v: &Value, g: usize, ctx: &str) -> Result<Vec<Vec<BigRational>>, DegenError> {
    let rows = v
        .as_array()
        .ok_or_else(|| DegenError::Json(format!("{ctx}: expected array of rows")))?;
    if rows.len() != g {
        return Err(DegenError::Json(format!("{ctx}: expected {g} rows")));
    }
    let mut out = Vec::with_capacity(g);
    for (i, r) in rows.iter().enumerate() {
        let cells = r
            .as_array()
            .ok_or_else(|| DegenError::Json(format!("{ctx}: row {i} is not an array")))?;
        if cells.len() != g {
            return Err(DegenError::Json(format!("{ctx}: row {i} must have {g} entries")));
        }
        out.push(cells.iter().map(|c| parse_rational(c, ctx)).collect::<Result<_, _>>()?);
    }
    Ok(out)
}

/// A unit entry is either a rational string/number ("2", "-3/2") or a full
/// canonical scalar string ("+1 * 2^(1/2) * t^(0)"); its valuation must be 0.
fn parse_unit_rows(v: &Value, g: usize) -> Result<Vec<Vec<ValuedScalar>>, DegenError> {
    let ctx = "tau_units";
    let rows = v
        .as_array()
        .ok_or_else(|| DegenError::Json(format!("{ctx}: expected array of rows")))?;
    if rows.len() != g {
        return Err(DegenError::Json(format!("{ctx}: expected {g} rows")));
    }
    let mut out = Vec::with_capacity(g);
    for (i, r) in rows.iter().enumerate() {
        let cells = r
            .as_array()
            .ok_or_else(|| DegenError::Json(format!("{ctx}: row {i} is not an array")))?;
        if cells.len() != g {
            return Err(DegenError::Json(format!("{ctx}: row {i} must have {g} entries")));
        }
        let mut row = Vec::with_capacity(g);
        for c in cells {
            let s = match c {
                Value::String(s) if s.contains(" * ") => ValuedScalar::from_str(s)
                    .map_err(|e| DegenError::Json(format!("{ctx}: {e}")))?,
                other => {
                    let q = parse_rational(other, ctx)?;
                    ValuedScalar::from_rational(&q)
                        .ok_or_else(|| DegenError::Json(format!("{ctx}: unit must be nonzero")))?
                }
            };
            if !s.valuation().is_zero() {
                return Err(DegenError::Json(format!("{ctx}: unit part must have valuation 0")));
            }
            row.push(s);
        }
        out.push(row);
    }
    Ok(out)
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn render_bigint(n: &BigInt) -> Value {
    match i64::try_from(n.clone()) {
        Ok(k) => Value::from(k),
        Err(_) => Value::String(n.to_string()),
    }
}
