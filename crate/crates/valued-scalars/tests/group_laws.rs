//! Property tests: group laws, valuation homomorphism, root/power inverses,
//! and bit-exact textual round-trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use valued_scalars::{vs_valuation, ValuedScalar};

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn scalar() -> impl Strategy<Value = ValuedScalar> {
    (
        prop_oneof![Just(1i8), Just(-1i8)],
        proptest::collection::vec((prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], rational()), 0..3),
        rational(),
    )
        .prop_map(|(s, units, t)| ValuedScalar::new(s, units, t).unwrap())
}

proptest! {
    #[test]
    fn abelian_group_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a), "commutativity");
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)), "associativity");
        prop_assert_eq!(a.mul(&ValuedScalar::one()), a.clone(), "identity");
        prop_assert!(a.mul(&a.inv()).is_one(), "inverses");
    }

    #[test]
    fn valuation_is_homomorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(
            vs_valuation(&a.mul(&b)),
            vs_valuation(&a) + vs_valuation(&b),
            "v(ab) = v(a) + v(b)"
        );
    }

    #[test]
    fn root_then_power_restores(a in scalar(), e in 1u32..=6) {
        match a.root(e) {
            Ok(r) => {
                prop_assert_eq!(r.pow(e as i64), a, "root(a,e)^e = a");
            }
            Err(err) => {
                prop_assert!(a.sign() == -1 && e % 2 == 0);
                prop_assert_eq!(err.to_string(), "sign obstruction: needs root of unity");
            }
        }
    }

    #[test]
    fn textual_round_trip_is_bit_exact(a in scalar()) {
        let text = a.to_string();
        let back: ValuedScalar = text.parse().expect("canonical text must parse");
        prop_assert_eq!(&back, &a, "parse(render(a)) = a");
        prop_assert_eq!(back.to_string(), text, "render is stable");
    }
}
