//! Randomized algebraic properties of the rational-function field:
//! field axioms, canonical printing as an inverse of parsing, parameter
//! shifts as field automorphisms, evaluation as a homomorphism, and the
//! Pochhammer addition law the contiguous machinery leans on.

use proptest::prelude::*;

use contig::{parse_expr, pochhammer, print_expr, RatFunc, Rational, Var};

const VARS: [Var; 5] = [Var::A, Var::B, Var::C, Var::Z, Var::N];

/// A small random rational function built from shifted variables and
/// integers under +, −, ×. Division is exercised separately through
/// `reciprocal`, so denominators stay in canonical reach here.
fn ratfunc() -> impl Strategy<Value = RatFunc> {
    let leaf = prop_oneof![
        (0usize..5).prop_map(|i| RatFunc::var(VARS[i])),
        (-6i64..7).prop_map(RatFunc::from_int),
        ((0usize..5), -3i64..4).prop_map(|(i, k)| RatFunc::var_plus(VARS[i], k)),
    ];
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, g)| f.add(&g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| f.sub(&g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| f.mul(&g)),
            inner.prop_map(|f| f.neg()),
        ]
    })
}

/// A rational sample point for all five variables, denominators kept
/// small so pole avoidance stays likely.
fn point() -> impl Strategy<Value = Vec<(Var, Rational)>> {
    proptest::collection::vec((-9i64..10, 1i64..8), 5).prop_map(|draws| {
        VARS.iter()
            .zip(draws)
            .map(|(v, (num, den))| {
                let value = Rational::from_integer(num.into())
                    / Rational::from_integer(den.into());
                (*v, value)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printing_round_trips_through_the_parser(f in ratfunc()) {
        let reparsed = parse_expr(&print_expr(&f)).unwrap();
        prop_assert_eq!(reparsed, f);
    }

    #[test]
    fn addition_and_multiplication_are_commutative(f in ratfunc(), g in ratfunc()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn both_operations_are_associative(f in ratfunc(), g in ratfunc(), h in ratfunc()) {
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn multiplication_distributes_over_addition(f in ratfunc(), g in ratfunc(), h in ratfunc()) {
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
    }

    #[test]
    fn subtraction_inverts_addition(f in ratfunc(), g in ratfunc()) {
        prop_assert_eq!(f.add(&g).sub(&g), f.clone());
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn nonzero_elements_have_multiplicative_inverses(f in ratfunc()) {
        prop_assume!(!f.is_zero());
        let inverse = f.reciprocal().unwrap();
        prop_assert_eq!(f.mul(&inverse), RatFunc::one());
    }

    #[test]
    fn parameter_shifts_are_field_automorphisms(f in ratfunc(), g in ratfunc(), k in -3i64..4) {
        for v in [Var::A, Var::B, Var::C] {
            prop_assert_eq!(
                f.add(&g).shift(v, k),
                f.shift(v, k).add(&g.shift(v, k))
            );
            prop_assert_eq!(
                f.mul(&g).shift(v, k),
                f.shift(v, k).mul(&g.shift(v, k))
            );
            prop_assert_eq!(f.shift(v, k).shift(v, -k), f.clone());
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in ratfunc(), g in ratfunc(), p in point()) {
        let (Ok(fv), Ok(gv)) = (f.eval(&p), g.eval(&p)) else {
            // The sample hit a pole of f or g; nothing to check there.
            return Ok(());
        };
        // Denominators of f + g and f·g divide the product of the two
        // denominators, so these evaluations cannot hit a new pole.
        prop_assert_eq!(f.add(&g).eval(&p).unwrap(), fv.clone() + gv.clone());
        prop_assert_eq!(f.mul(&g).eval(&p).unwrap(), fv * gv);
    }

    #[test]
    fn pochhammer_satisfies_the_addition_law(j in -4i64..5, k in -4i64..5) {
        // (x)_{j+k} = (x)_j · (x+j)_k as rational functions of x.
        let x = RatFunc::var(Var::A);
        let shifted = x.add(&RatFunc::from_int(j));
        prop_assert_eq!(
            pochhammer(&x, j + k),
            pochhammer(&x, j).mul(&pochhammer(&shifted, k))
        );
    }
}
