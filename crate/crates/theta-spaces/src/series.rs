//! Truncated formal theta series.
//!
//! A series is a finite sum of terms `c_x · w^x` where `x` ranges over lattice
//! weights and each coefficient `c_x` is an exact valued monomial.  A series
//! carries a valuation `cutoff`: it represents the full (infinite) expansion
//! modulo terms of valuation `>= cutoff`, and every stored coefficient has
//! valuation strictly below the cutoff.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use valued_scalars::ValuedScalar;

use crate::ThetaError;

/// A truncated formal theta series at tensor level `m`.
///
/// All stored weights lie in a single coset of the period sublattice for the
/// space that produced the series; the coefficients are exact monomials in
/// the uniformizer and the unit primes, so equality of truncations is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalThetaSeries {
    level: u32,
    terms: BTreeMap<Vec<BigInt>, ValuedScalar>,
    cutoff: BigRational,
}

impl FormalThetaSeries {
    /// Assemble a series from explicit terms.  Every coefficient must have
    /// valuation strictly below `cutoff`.
    pub fn new(
        level: u32,
        terms: BTreeMap<Vec<BigInt>, ValuedScalar>,
        cutoff: BigRational,
    ) -> Result<Self, ThetaError> {
        for (x, c) in &terms {
            if c.valuation() >= &cutoff {
                return Err(ThetaError::InvalidInput(format!(
                    "term at weight {x:?} has valuation {} >= cutoff {cutoff}",
                    c.valuation()
                )));
            }
        }
        Ok(FormalThetaSeries {
            level,
            terms,
            cutoff,
        })
    }

    /// Tensor level `m` of the series.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Valuation below which the expansion is complete.
    pub fn cutoff(&self) -> &BigRational {
        &self.cutoff
    }

    /// The stored terms, keyed by weight.
    pub fn terms(&self) -> &BTreeMap<Vec<BigInt>, ValuedScalar> {
        &self.terms
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at a given weight, if present.
    pub fn coefficient(&self, x: &[BigInt]) -> Option<&ValuedScalar> {
        self.terms.get(x)
    }

    /// The term of minimal valuation (ties broken by lexicographically
    /// smallest weight).  `None` for the empty series.
    pub fn leading(&self) -> Option<(&Vec<BigInt>, &ValuedScalar)> {
        self.terms
            .iter()
            .min_by(|(xa, ca), (xb, cb)| ca.valuation().cmp(cb.valuation()).then(xa.cmp(xb)))
    }

    /// Smallest valuation among stored terms.
    pub fn min_valuation(&self) -> Option<BigRational> {
        self.terms.values().map(|c| c.valuation().clone()).min()
    }

    /// Largest valuation among stored terms.
    pub fn max_valuation(&self) -> Option<BigRational> {
        self.terms.values().map(|c| c.valuation().clone()).max()
    }

    /// Drop all terms of valuation `>= bound` and lower the cutoff to
    /// `min(cutoff, bound)`.
    pub fn truncate(&self, bound: &BigRational) -> FormalThetaSeries {
        let cutoff = if bound < &self.cutoff {
            bound.clone()
        } else {
            self.cutoff.clone()
        };
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| c.valuation() < &cutoff)
            .map(|(x, c)| (x.clone(), c.clone()))
            .collect();
        FormalThetaSeries {
            level: self.level,
            terms,
            cutoff,
        }
    }

    /// Exact equality of the two expansions below `bound`.  Both series must
    /// be complete below `bound` (their cutoffs must be at least `bound`) for
    /// the comparison to be meaningful; this is asserted.
    pub fn agrees_below(&self, other: &FormalThetaSeries, bound: &BigRational) -> bool {
        assert!(
            &self.cutoff >= bound && &other.cutoff >= bound,
            "agrees_below called beyond a series cutoff"
        );
        let mine: BTreeMap<_, _> = self
            .terms
            .iter()
            .filter(|(_, c)| c.valuation() < bound)
            .collect();
        let theirs: BTreeMap<_, _> = other
            .terms
            .iter()
            .filter(|(_, c)| c.valuation() < bound)
            .collect();
        mine == theirs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn w(coords: &[i64]) -> Vec<BigInt> {
        coords.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn new_rejects_terms_at_or_above_cutoff() {
        let mut terms = BTreeMap::new();
        terms.insert(w(&[0]), ValuedScalar::t_pow(BigRational::from(BigInt::from(5))));
        let err = FormalThetaSeries::new(1, terms, BigRational::from(BigInt::from(5)));
        assert!(err.is_err());
    }

    #[test]
    fn leading_breaks_valuation_ties_lexicographically() {
        let mut terms = BTreeMap::new();
        terms.insert(w(&[3]), ValuedScalar::one());
        terms.insert(w(&[-1]), ValuedScalar::one());
        terms.insert(
            w(&[0]),
            ValuedScalar::t_pow(BigRational::from(BigInt::from(2))),
        );
        let s = FormalThetaSeries::new(1, terms, BigRational::from(BigInt::from(10))).unwrap();
        let (x, c) = s.leading().unwrap();
        assert_eq!(x, &w(&[-1]));
        assert!(c.is_one());
    }

    #[test]
    fn truncate_and_agrees_below_are_consistent() {
        let mut terms = BTreeMap::new();
        terms.insert(w(&[0]), ValuedScalar::one());
        terms.insert(
            w(&[4]),
            ValuedScalar::t_pow(BigRational::from(BigInt::from(2))),
        );
        terms.insert(
            w(&[8]),
            ValuedScalar::t_pow(BigRational::from(BigInt::from(8))),
        );
        let s = FormalThetaSeries::new(1, terms, BigRational::from(BigInt::from(20))).unwrap();
        let t = s.truncate(&BigRational::from(BigInt::from(5)));
        assert_eq!(t.len(), 2);
        assert!(t.cutoff() == &BigRational::from(BigInt::from(5)));
        assert!(s.agrees_below(&t, &BigRational::from(BigInt::from(5))));
        assert_eq!(s.min_valuation().unwrap(), BigRational::from(BigInt::from(0)));
        assert_eq!(s.max_valuation().unwrap(), BigRational::from(BigInt::from(8)));
        assert!(BigRational::one() <= s.max_valuation().unwrap());
    }
}
