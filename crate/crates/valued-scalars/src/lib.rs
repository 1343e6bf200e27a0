//! Exact arithmetic in the multiplicative group  {±1} × (ℚ×_{>0} ⊗ ℚ) × t^ℚ.
//!
//! A `ValuedScalar` models a unit-times-t-power in the fraction field of a
//! complete DVR together with all radical extensions: a sign, a finite map
//! prime → rational exponent (the unit part in reduced form), and a rational
//! t-exponent realizing the valuation. Zero is deliberately not representable:
//! this is a group, not a ring.

mod series;

pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Errors for valued-scalar arithmetic and parsing.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum VsError {
    /// Even root of a negative element: only resolvable by adjoining a root of unity.
    #[error("sign obstruction: needs root of unity")]
    SignObstruction,
    /// Unit-part keys must be prime numbers.
    #[error("not a prime: {0}")]
    NotPrime(u64),
    /// Malformed textual form.
    #[error("invalid scalar text: {0}")]
    Parse(String),
}

/// Element of {±1} × (ℚ×_{>0} ⊗ ℚ) × t^ℚ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValuedScalar {
    sign: i8,
    units: BTreeMap<u64, BigRational>,
    t_exp: BigRational,
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl ValuedScalar {
    /// The identity element.
    pub fn one() -> Self {
        ValuedScalar { sign: 1, units: BTreeMap::new(), t_exp: BigRational::zero() }
    }

    /// −1 as a scalar.
    pub fn minus_one() -> Self {
        ValuedScalar { sign: -1, units: BTreeMap::new(), t_exp: BigRational::zero() }
    }

    /// The uniformizer t.
    pub fn t() -> Self {
        Self::t_pow(BigRational::one())
    }

    /// t^q for rational q.
    pub fn t_pow(q: BigRational) -> Self {
        ValuedScalar { sign: 1, units: BTreeMap::new(), t_exp: q }
    }

    /// Build from parts, validating primality of unit keys; zero exponents
    /// are dropped so equality is structural.
    pub fn new(
        sign: i8,
        units: impl IntoIterator<Item = (u64, BigRational)>,
        t_exp: BigRational,
    ) -> Result<Self, VsError> {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        let mut map = BTreeMap::new();
        for (p, e) in units {
            if !is_prime(p) {
                return Err(VsError::NotPrime(p));
            }
            if !e.is_zero() {
                let cur = map.entry(p).or_insert_with(BigRational::zero);
                *cur += e;
                if cur.is_zero() {
                    map.remove(&p);
                }
            }
        }
        Ok(ValuedScalar { sign, units: map, t_exp })
    }

    /// A positive rational as a scalar (exact prime factorization of num/den).
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        if q.is_zero() {
            return None;
        }
        let sign = if q.is_negative() { -1 } else { 1 };
        let mut units = BTreeMap::new();
        let mut side = |n: &BigInt, dir: i64| {
            let mut n = n.abs();
            let mut p = BigInt::from(2u64);
            while &p * &p <= n {
                let mut e = 0i64;
                while (&n % &p).is_zero() {
                    n /= &p;
                    e += 1;
                }
                if e != 0 {
                    let key = u64::try_from(&p).expect("small factor");
                    *units.entry(key).or_insert_with(BigRational::zero) +=
                        BigRational::from(BigInt::from(e * dir));
                }
                p += 1;
            }
            if n > BigInt::one() {
                let key = u64::try_from(&n).ok()?;
                *units.entry(key).or_insert_with(BigRational::zero) +=
                    BigRational::from(BigInt::from(dir));
            }
            Some(())
        };
        side(q.numer(), 1)?;
        side(q.denom(), -1)?;
        units.retain(|_, e| !e.is_zero());
        Some(ValuedScalar { sign, units, t_exp: BigRational::zero() })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn unit_exponent(&self, p: u64) -> BigRational {
        self.units.get(&p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn units(&self) -> impl Iterator<Item = (&u64, &BigRational)> {
        self.units.iter()
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.units.is_empty() && self.t_exp.is_zero()
    }

    /// Componentwise product; valuations add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut units = self.units.clone();
        for (p, e) in &other.units {
            let cur = units.entry(*p).or_insert_with(BigRational::zero);
            *cur += e;
            if cur.is_zero() {
                units.remove(p);
            }
        }
        ValuedScalar { sign: self.sign * other.sign, units, t_exp: &self.t_exp + &other.t_exp }
    }

    pub fn inv(&self) -> Self {
        ValuedScalar {
            sign: self.sign,
            units: self.units.iter().map(|(p, e)| (*p, -e)).collect(),
            t_exp: -&self.t_exp,
        }
    }

    /// Integer power (negative allowed).
    pub fn pow(&self, k: i64) -> Self {
        let kq = BigRational::from(BigInt::from(k));
        let sign = if k.is_even() { 1 } else { self.sign };
        let mut units: BTreeMap<u64, BigRational> =
            self.units.iter().map(|(p, e)| (*p, e * &kq)).collect();
        units.retain(|_, e| !e.is_zero());
        ValuedScalar { sign, units, t_exp: &self.t_exp * &kq }
    }

    /// Integer power with arbitrary-precision exponent.
    pub fn pow_big(&self, k: &BigInt) -> Self {
        let kq = BigRational::from(k.clone());
        let sign = if k.is_even() { 1 } else { self.sign };
        let mut units: BTreeMap<u64, BigRational> =
            self.units.iter().map(|(p, e)| (*p, e * &kq)).collect();
        units.retain(|_, e| !e.is_zero());
        ValuedScalar { sign, units, t_exp: &self.t_exp * &kq }
    }

    /// Rational power q = a/b: scales every exponent by q. On a negative
    /// element this is only defined for integral q (sign (−1)^a); a
    /// fractional power of a negative element is the sign obstruction.
    pub fn pow_rational(&self, q: &BigRational) -> Result<Self, VsError> {
        let sign = if self.sign == -1 {
            if !q.is_integer() {
                return Err(VsError::SignObstruction);
            }
            if q.numer().is_even() {
                1
            } else {
                -1
            }
        } else {
            1
        };
        let mut units: BTreeMap<u64, BigRational> =
            self.units.iter().map(|(p, e)| (*p, e * q)).collect();
        units.retain(|_, e| !e.is_zero());
        Ok(ValuedScalar { sign, units, t_exp: &self.t_exp * q })
    }

    /// e-th root: divides every exponent by e. The result sign is + except
    /// for odd roots of negative elements; even roots of negative elements
    /// are the sign obstruction.
    pub fn root(&self, e: u32) -> Result<Self, VsError> {
        assert!(e > 0, "root order must be positive");
        let sign = if self.sign == -1 {
            if e % 2 == 0 {
                return Err(VsError::SignObstruction);
            }
            -1
        } else {
            1
        };
        let eq = BigRational::from(BigInt::from(e));
        Ok(ValuedScalar {
            sign,
            units: self.units.iter().map(|(p, x)| (*p, x / &eq)).collect(),
            t_exp: &self.t_exp / &eq,
        })
    }

    /// v_t — a homomorphism to (ℚ, +).
    pub fn valuation(&self) -> &BigRational {
        &self.t_exp
    }

    /// Exact rational value when every unit exponent is integral and the
    /// t-exponent is zero; None otherwise.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.t_exp.is_zero() {
            return None;
        }
        self.unit_value().map(|u| if self.sign == -1 { -u } else { u })
    }

    /// Rational value of the unit part alone (sign excluded), if integral.
    pub fn unit_value(&self) -> Option<BigRational> {
        let mut acc = BigRational::one();
        for (p, e) in &self.units {
            if !e.is_integer() {
                return None;
            }
            let k = i64::try_from(&e.to_integer()).ok()?;
            let base = BigRational::from(BigInt::from(*p));
            let factor = if k >= 0 {
                num_traits::pow::pow(base, k as usize)
            } else {
                num_traits::pow::pow(base, (-k) as usize).recip()
            };
            acc *= factor;
        }
        Some(acc)
    }

    /// Series view: a single term t^{v} with rational coefficient, when the
    /// unit part is rational.
    pub fn to_series_term(&self) -> Option<(BigRational, BigRational)> {
        let u = self.unit_value()?;
        let c = if self.sign == -1 { -u } else { u };
        Some((self.t_exp.clone(), c))
    }

    /// Least common multiple of unit-exponent and valuation denominators:
    /// the ramification index needed to realize this scalar.
    pub fn ramification_index(&self) -> BigInt {
        let mut l = self.t_exp.denom().clone();
        for e in self.units.values() {
            l = l.lcm(e.denom());
        }
        l
    }
}

/// Spec-facing free functions.
pub fn vs_mul(a: &ValuedScalar, b: &ValuedScalar) -> ValuedScalar {
    a.mul(b)
}

pub fn vs_root(a: &ValuedScalar, e: u32) -> Result<ValuedScalar, VsError> {
    a.root(e)
}

pub fn vs_valuation(a: &ValuedScalar) -> BigRational {
    a.valuation().clone()
}

impl fmt::Display for ValuedScalar {
    /// Canonical textual form: `+1 * 2^(1/2) * 3^(-2) * t^(5/3)` — sign,
    /// ascending prime factors, then the t-power (always present).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.sign == 1 { "+1" } else { "-1" })?;
        for (p, e) in &self.units {
            write!(f, " * {}^({})", p, e)?;
        }
        write!(f, " * t^({})", self.t_exp)
    }
}

fn parse_exponent(tok: &str, full: &str) -> Result<BigRational, VsError> {
    BigRational::from_str(tok).map_err(|_| VsError::Parse(full.to_string()))
}

impl FromStr for ValuedScalar {
    type Err = VsError;

    fn from_str(s: &str) -> Result<Self, VsError> {
        let bad = || VsError::Parse(s.to_string());
        let mut parts = s.split(" * ");
        let sign = match parts.next().ok_or_else(bad)? {
            "+1" => 1,
            "-1" => -1,
            _ => return Err(bad()),
        };
        let mut units = Vec::new();
        let mut t_exp: Option<BigRational> = None;
        for tok in parts {
            if t_exp.is_some() {
                return Err(bad()); // t-factor must be last
            }
            let (base, exp) = tok.split_once("^(").ok_or_else(bad)?;
            let exp = exp.strip_suffix(')').ok_or_else(bad)?;
            let exp = parse_exponent(exp, s)?;
            if base == "t" {
                t_exp = Some(exp);
            } else {
                let p: u64 = base.parse().map_err(|_| bad())?;
                units.push((p, exp));
            }
        }
        let t_exp = t_exp.ok_or_else(bad)?;
        // Enforce strictly increasing primes so round-trips are bit-exact.
        for w in units.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(bad());
            }
        }
        ValuedScalar::new(sign, units, t_exp)
    }
}
