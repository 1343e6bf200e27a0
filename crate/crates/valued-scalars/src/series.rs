//! Truncated generalized power series in t with rational exponents and
//! rational coefficients.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Finite map t-exponent → coefficient, truncated at a cutoff: every stored
/// exponent is < cutoff, and arithmetic is exact below the cutoff.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    terms: BTreeMap<BigRational, BigRational>,
    cutoff: BigRational,
}

impl TruncatedSeries {
    pub fn zero(cutoff: BigRational) -> Self {
        TruncatedSeries { terms: BTreeMap::new(), cutoff }
    }

    pub fn cutoff(&self) -> &BigRational {
        &self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add c·t^e, silently dropping exponents at or beyond the cutoff.
    pub fn add_term(&mut self, e: BigRational, c: BigRational) {
        if c.is_zero() || e >= self.cutoff {
            return;
        }
        let cur = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *cur += c;
        if cur.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut out = TruncatedSeries::zero(cutoff);
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = TruncatedSeries::zero(self.cutoff.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Truncating product: exact for every exponent below the shared cutoff.
    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut out = TruncatedSeries::zero(cutoff);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Lowest exponent present, if any.
    pub fn leading_exponent(&self) -> Option<&BigRational> {
        self.terms.keys().next()
    }

    pub fn coefficient(&self, e: &BigRational) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let parts: Vec<String> =
                self.terms.iter().map(|(e, c)| format!("({})t^({})", c, e)).collect();
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, " + O(t^({}))", self.cutoff)
    }
}
