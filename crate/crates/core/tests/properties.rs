//! Randomized algebraic properties of the polynomial, operator, and
//! alternating-sum layers. These complement the pinned-value unit tests:
//! every law here must hold identically, so any counterexample is a bug.

use ncomm_core::diffop::{d12, potential, DiffOp, VField};
use ncomm_core::poly::{Expo, Poly};
use ncomm_core::rat::Rat;
use ncomm_core::skewsum::{
    s_k, s_k_cup_split, s_k_fields, s_k_naive, EvalStrategy, ProductMode,
};
use proptest::prelude::*;

fn arb_poly(n: usize, deg: u8, terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0u8..=deg, n), -4i64..=4i64),
        0..=terms,
    )
    .prop_map(move |ts| {
        let mut p = Poly::zero(n);
        for (e, c) in ts {
            let total: u16 = e.iter().map(|&v| u16::from(v)).sum();
            if total <= u16::from(deg) {
                p.add_term(Expo::from_slice(&e), Rat::int(c));
            }
        }
        p
    })
}

fn arb_field(n: usize, deg: u8) -> impl Strategy<Value = VField> {
    prop::collection::vec(arb_poly(n, deg, 3), n).prop_map(VField::new)
}

fn arb_divfree(deg: u8) -> impl Strategy<Value = VField> {
    arb_poly(2, deg + 1, 3).prop_map(|u| d12(&u))
}

fn arb_op(n: usize, ord: u8, deg: u8) -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(
        (prop::collection::vec(0u8..=ord, n), arb_poly(n, deg, 2)),
        1..=2,
    )
    .prop_map(move |ts| {
        let mut op = DiffOp::zero(n);
        for (e, u) in ts {
            op = &op + &DiffOp::term(Expo::from_slice(&e), u);
        }
        op
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polynomial_ring_axioms(
        a in arb_poly(2, 5, 4),
        b in arb_poly(2, 5, 4),
        c in arb_poly(2, 5, 4),
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &(&b * &c), &(&a * &b) * &c);
    }

    #[test]
    fn partial_derivatives_are_derivations_and_commute(
        a in arb_poly(3, 5, 4),
        b in arb_poly(3, 5, 4),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        prop_assert_eq!(
            (&a * &b).partial(i),
            &(&a.partial(i) * &b) + &(&a * &b.partial(i))
        );
        prop_assert_eq!(a.partial(i).partial(j), a.partial(j).partial(i));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_and_acts_left_to_right(
        x in arb_op(2, 2, 3),
        y in arb_op(2, 2, 3),
        z in arb_op(2, 2, 3),
        f in arb_poly(2, 4, 3),
    ) {
        prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
        prop_assert_eq!(x.compose(&y).apply(&f), y.apply(&x.apply(&f)));
    }

    #[test]
    fn bullet_is_the_order_raising_remainder(
        x in arb_field(2, 3),
        y in arb_field(2, 3),
    ) {
        let (a, b) = (x.as_op(), y.as_op());
        prop_assert_eq!(a.compose(&b), &a.rsym(&b) + &a.bullet(&b));
        let bl = a.bullet(&b);
        if !bl.is_zero() {
            prop_assert!(bl.ord_min() >= Some(2));
        }
    }

    #[test]
    fn rsym_associator_is_symmetric_in_the_last_two_arguments(
        x in arb_field(2, 2),
        y in arb_field(2, 2),
        z in arb_field(2, 2),
    ) {
        let (a, b, c) = (x.as_op(), y.as_op(), z.as_op());
        let assoc = |p: &DiffOp, q: &DiffOp, r: &DiffOp| &p.rsym(q).rsym(r) - &p.rsym(&q.rsym(r));
        prop_assert_eq!(assoc(&a, &b, &c), assoc(&a, &c, &b));
    }

    #[test]
    fn field_bracket_is_the_operator_commutator(
        x in arb_field(2, 3),
        y in arb_field(2, 3),
    ) {
        prop_assert_eq!(x.bracket(&y).as_op(), x.as_op().commutator(&y.as_op()));
    }

    #[test]
    fn divergence_interacts_with_brackets_by_application(
        x in arb_field(2, 3),
        y in arb_field(2, 3),
    ) {
        // bracket(x, y) pairs with apply so that the y-side acts on x's
        // divergence positively, mirroring the act-first composition order
        let lhs = x.bracket(&y).divergence();
        let rhs = &y.as_op().apply(&x.divergence()) - &x.as_op().apply(&y.divergence());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hamiltonian_fields_are_divergence_free_with_potentials(u in arb_poly(2, 6, 4)) {
        let x = d12(&u);
        prop_assert!(x.divergence().is_zero());
        let v = potential(&x).expect("divergence-free fields have potentials");
        prop_assert_eq!(d12(&v), x);
    }

    #[test]
    fn potential_rejects_fields_with_divergence(x in arb_field(2, 3)) {
        if !x.divergence().is_zero() {
            prop_assert!(potential(&x).is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn alternating_sums_are_skew_symmetric(
        tup in prop::collection::vec(arb_field(2, 2), 4),
        i in 0usize..4,
        j in 0usize..4,
    ) {
        prop_assume!(i != j);
        let ops: Vec<DiffOp> = tup.iter().map(VField::as_op).collect();
        let mut swapped = ops.clone();
        swapped.swap(i, j);
        prop_assert_eq!(
            s_k_naive(&swapped, ProductMode::Composition),
            s_k_naive(&ops, ProductMode::Composition).scale(&Rat::int(-1))
        );
    }

    #[test]
    fn alternating_sums_are_linear_in_each_slot(
        tup in prop::collection::vec(arb_field(2, 2), 4),
        extra in arb_field(2, 2),
        c in -3i64..=3i64,
    ) {
        let mut shifted: Vec<DiffOp> = tup.iter().map(VField::as_op).collect();
        let base = s_k_naive(&shifted, ProductMode::Composition);
        let original = shifted[0].clone();
        shifted[0] = extra.as_op();
        let alt = s_k_naive(&shifted, ProductMode::Composition);
        shifted[0] = &original + &extra.as_op().scale(&Rat::int(c));
        prop_assert_eq!(
            s_k_naive(&shifted, ProductMode::Composition),
            &base + &alt.scale(&Rat::int(c))
        );
    }

    #[test]
    fn evaluation_strategies_agree_at_small_arity(
        tup in prop::collection::vec(arb_field(2, 2), 2..=5),
    ) {
        let ops: Vec<DiffOp> = tup.iter().map(VField::as_op).collect();
        let k = ops.len();
        let naive = s_k_naive(&ops, ProductMode::Composition);
        prop_assert_eq!(&naive, &s_k(&ops, ProductMode::Composition, EvalStrategy::SubsetDp));
        prop_assert_eq!(&naive, &s_k_cup_split(&ops, (k / 2).max(1)));
        prop_assert_eq!(
            s_k_naive(&ops, ProductMode::RsymLeftNormed),
            s_k(&ops, ProductMode::RsymLeftNormed, EvalStrategy::RsymRecursion)
        );
    }

    #[test]
    fn arity_5_is_first_order_on_divergence_free_tuples(
        tup in prop::collection::vec(arb_divfree(3), 5),
    ) {
        let v = s_k_fields(&tup, EvalStrategy::SubsetDp);
        prop_assert!(v.is_zero() || v.is_first_order());
        let ops: Vec<DiffOp> = tup.iter().map(VField::as_op).collect();
        prop_assert_eq!(v, s_k(&ops, ProductMode::RsymLeftNormed, EvalStrategy::RsymRecursion));
    }

    #[test]
    fn arity_6_is_first_order_on_planar_tuples(
        tup in prop::collection::vec(arb_field(2, 2), 6),
    ) {
        let v = s_k_fields(&tup, EvalStrategy::SubsetDp);
        prop_assert!(v.is_zero() || v.is_first_order());
    }
}
