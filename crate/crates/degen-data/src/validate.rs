//! Report-valued validation of a degeneration datum: injectivity of φ,
//! symmetry and positivity of the pairing, existence of ψ, and consistency
//! of the abelian descriptor. Failures carry explicit witnesses.

use crate::datum::render_rational;
use crate::DegenerationDatum;
use lattice_core::{primitive_vector, smith_normal_form, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};
use std::fmt;

/// One named check with its outcome and, on failure, a witness string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationItem {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Outcome of `validate`: one item per invariant, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub items: Vec<ValidationItem>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> Vec<&ValidationItem> {
        self.items.iter().filter(|i| !i.pass).collect()
    }

    pub fn failure_summary(&self) -> String {
        self.failures()
            .iter()
            .map(|i| i.name.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn to_json_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("pass".into(), Value::Bool(self.pass()));
        obj.insert(
            "items".into(),
            Value::Array(
                self.items
                    .iter()
                    .map(|i| {
                        let mut o = Map::new();
                        o.insert("name".into(), Value::String(i.name.clone()));
                        o.insert("pass".into(), Value::Bool(i.pass));
                        o.insert(
                            "witness".into(),
                            i.witness.clone().map(Value::String).unwrap_or(Value::Null),
                        );
                        Value::Object(o)
                    })
                    .collect(),
            ),
        );
        Value::Object(obj)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let mark = if item.pass { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", item.name)?;
            if let Some(w) = &item.witness {
                write!(f, " — {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Run every datum invariant and collect the outcomes.
pub fn validate(d: &DegenerationDatum) -> ValidationReport {
    let g = d.rank();
    let mut items = Vec::new();
    let basis = |i: usize| -> Vec<BigInt> {
        (0..g).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }).collect()
    };

    // 1. φ injective.
    {
        let snf = smith_normal_form(d.phi());
        let kernel = snf.divisors.iter().position(|e| e.is_zero());
        items.push(match kernel {
            None => ValidationItem { name: "phi_injective".into(), pass: true, witness: None },
            Some(k) => {
                let v = snf.v.col(k);
                ValidationItem {
                    name: "phi_injective".into(),
                    pass: false,
                    witness: Some(format!("phi kernel contains y = {}", fmt_vec(&v))),
                }
            }
        });
    }

    // 2. Symmetry τ(y, φ(z)) = τ(z, φ(y)).
    {
        let mut witness = None;
        'outer: for i in 0..g {
            for j in (i + 1)..g {
                let a = d.tau_y_phi(&basis(i), &basis(j));
                let b = d.tau_y_phi(&basis(j), &basis(i));
                if a != b {
                    witness = Some(format!(
                        "tau(y_{i}, phi(y_{j})) = {a} but tau(y_{j}, phi(y_{i})) = {b}"
                    ));
                    break 'outer;
                }
            }
        }
        items.push(ValidationItem {
            name: "tau_symmetric".into(),
            pass: witness.is_none(),
            witness,
        });
    }

    // 3. Positivity of B∘φ. The symmetrization has the same quadratic values,
    //    so the check is meaningful even when symmetry already failed.
    {
        let s = d.pairing_phi();
        let mut sym = RatMatrix::zero(g, g);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for i in 0..g {
            for j in 0..g {
                sym.set(i, j, (s.get(i, j) + s.get(j, i)) * &half);
            }
        }
        let witness = psd_witness(&sym).map(|y| {
            let val = quad_value(&sym, &y);
            format!("y = {} gives (B∘phi)(y, y) = {} ≤ 0", fmt_vec(&y), render_rational(&val))
        });
        items.push(ValidationItem {
            name: "pairing_positive".into(),
            pass: witness.is_none(),
            witness,
        });
    }

    // 4. ψ normalization: τ(y_i, φ(y_i)) must be a square in the scalar group
    //    (then ψ(y)² = τ(y, φ(y)) and ψ(−y) = ψ(y) hold identically).
    {
        let mut witness = None;
        for i in 0..g {
            let tii = d.tau_y_phi(&basis(i), &basis(i));
            if tii.sign() == -1 {
                witness = Some(format!(
                    "tau(y_{i}, phi(y_{i})) = {tii} is negative: no square root ψ(y_{i})"
                ));
                break;
            }
        }
        items.push(ValidationItem {
            name: "psi_normalization".into(),
            pass: witness.is_none(),
            witness,
        });
    }

    // 5. Abelian descriptor consistency.
    {
        let ab = d.abelian();
        let witness = if ab.h0_m < BigInt::one() {
            Some(format!("h0 = {} is not positive", ab.h0_m))
        } else if ab.dim_a == 0 && ab.h0_m != BigInt::one() {
            Some(format!("dim A = 0 forces h0 = 1, got h0 = {}", ab.h0_m))
        } else {
            None
        };
        items.push(ValidationItem {
            name: "abelian_consistent".into(),
            pass: witness.is_none(),
            witness,
        });
    }

    ValidationReport { items }
}

fn fmt_vec(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn quad_value(a: &RatMatrix, y: &[BigInt]) -> BigRational {
    let yr: Vec<BigRational> = y.iter().map(|c| BigRational::from(c.clone())).collect();
    let ay = a.mul_vec(&yr);
    yr.iter().zip(&ay).map(|(u, v)| u * v).sum()
}

fn bilin(a: &RatMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let ay = a.mul_vec(y);
    x.iter().zip(&ay).map(|(u, v)| u * v).sum()
}

/// For symmetric A: None when A is positive definite, otherwise a nonzero
/// primitive integer vector y with yᵀAy ≤ 0. Rational Gram–Schmidt: the first
/// nonpositive diagonal of the orthogonalized basis is an explicit witness.
fn psd_witness(a: &RatMatrix) -> Option<Vec<BigInt>> {
    let n = a.rows;
    let mut basis: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| if k == i { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for k in 0..n {
        let dk = bilin(a, &basis[k], &basis[k]);
        if dk <= BigRational::zero() {
            return Some(to_primitive_int(&basis[k]));
        }
        let bk = basis[k].clone();
        for row in basis.iter_mut().skip(k + 1) {
            let c = bilin(a, row, &bk) / &dk;
            for (ri, bi) in row.iter_mut().zip(&bk) {
                *ri -= &c * bi;
            }
        }
    }
    None
}

fn to_primitive_int(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * BigRational::from(lcm.clone())).to_integer()).collect();
    primitive_vector(&ints)
}
