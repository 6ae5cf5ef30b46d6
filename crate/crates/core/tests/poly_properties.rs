mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::q;
use semistar_core::poly::{integer, interpolate, PolyJson};
use semistar_core::{Error, MultiPoly, Rational};

const VARS: [&str; 3] = ["x", "y", "z"];

/// Polynomials in up to three variables with degree at most 2 in each.
fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=2), -9i64..=9, 1i64..=4), 0..6).prop_map(
        |terms| {
            MultiPoly::from_terms(
                &VARS,
                terms.into_iter().map(|((a, b, c), n, d)| (vec![a, b, c], q(n, d))),
            )
            .unwrap()
        },
    )
}

fn point(values: [i64; 3]) -> BTreeMap<String, Rational> {
    VARS.iter().zip(values).map(|(v, x)| (v.to_string(), integer(x))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in -3i64..=3, y in -3i64..=3, z in -3i64..=3) {
        let pt = point([x, y, z]);
        let (va, vb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), va + vb);
    }

    #[test]
    fn interpolation_inverts_evaluation(p in arb_poly()) {
        let bounds: Vec<(String, u32)> = VARS.iter().map(|v| (v.to_string(), 2)).collect();
        let back = interpolate(&bounds, |pt| p.evaluate(&point([pt[0], pt[1], pt[2]]))).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn json_round_trips(p in arb_poly()) {
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let parsed: PolyJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(MultiPoly::from_json(&parsed).unwrap(), p);
    }
}

#[test]
fn example_values() {
    let pi2 = MultiPoly::from_terms(
        &["a", "b"],
        [
            (vec![0, 0], q(1, 1)),
            (vec![1, 0], q(1, 1)),
            (vec![0, 1], q(1, 1)),
            (vec![1, 1], q(9, 4)),
            (vec![2, 1], q(3, 4)),
            (vec![1, 2], q(3, 4)),
            (vec![2, 2], q(1, 4)),
        ],
    )
    .unwrap();
    assert_eq!(pi2.evaluate_at(&[("a", 1), ("b", 1)]).unwrap(), integer(7));
    assert_eq!(pi2.evaluate_at(&[("a", 0), ("b", 0)]).unwrap(), integer(1));
}

#[test]
fn big_coefficients_stay_exact() {
    let x = MultiPoly::var("x");
    let p = (&x + &MultiPoly::constant(q(65, 2))).pow(12);
    let value = p.evaluate_at(&[("x", 0)]).unwrap();
    assert_eq!(value, num_traits::pow(q(65, 2), 12));
}

#[test]
fn missing_variables_are_reported() {
    let p = &MultiPoly::var("x") * &MultiPoly::var("y");
    assert!(matches!(p.evaluate_at(&[("x", 1)]), Err(Error::MissingVariable(v)) if v == "y"));
}
