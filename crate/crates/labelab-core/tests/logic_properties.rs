//! Formula evaluation invariants on random formulas.

use labelab_core::logic::{
    atoms_decompose, eval_bounded, eval_infinite_u64, guard_transform, parse_formula, qe_order, Const, Formula, Term,
};
use proptest::prelude::*;

fn leaf(with_z: bool) -> BoxedStrategy<Term> {
    let mut leaves = vec![
        Just(Term::x(1)).boxed(),
        Just(Term::x(2)).boxed(),
        Just(Term::y(1)).boxed(),
        Just(Term::y(2)).boxed(),
        prop_oneof![Just(Const::C0), Just(Const::C1), Just(Const::Cm)].prop_map(Term::c).boxed(),
    ];
    if with_z {
        leaves.push(prop_oneof![Just(Term::z(1)), Just(Term::z(2))].boxed());
    }
    proptest::strategy::Union::new(leaves).boxed()
}

fn arithmetic_term() -> impl Strategy<Value = Term> {
    leaf(false).prop_recursive(2, 6, 2, |t| {
        prop_oneof![(t.clone(), t.clone()).prop_map(|(a, b)| Term::add(a, b)), (t.clone(), t).prop_map(|(a, b)| Term::mul(a, b))]
    })
}

fn connectives(atom: BoxedStrategy<Formula>) -> impl Strategy<Value = Formula> {
    atom.prop_recursive(3, 8, 2, |f| {
        prop_oneof![
            f.clone().prop_map(Formula::not),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (f.clone(), f).prop_map(|(a, b)| Formula::or(a, b)),
        ]
    })
}

fn arithmetic_formula() -> impl Strategy<Value = Formula> {
    let atom = (arithmetic_term(), arithmetic_term(), any::<bool>())
        .prop_map(|(a, b, lt)| if lt { Formula::lt(a, b) } else { Formula::eq(a, b) })
        .boxed();
    connectives(atom)
}

/// `Q1 z1 . Q2 z2 . body` with an order-only body.
fn quantified_order_formula() -> impl Strategy<Value = Formula> {
    let atom = (leaf(true), leaf(true), any::<bool>())
        .prop_map(|(a, b, lt)| if lt { Formula::lt(a, b) } else { Formula::eq(a, b) })
        .boxed();
    (connectives(atom), any::<bool>(), any::<bool>()).prop_map(|(body, e1, e2)| {
        let inner = if e2 { Formula::exists(2, body) } else { Formula::forall(2, body) };
        if e1 { Formula::exists(1, inner) } else { Formula::forall(1, inner) }
    })
}

fn assignments(n: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..(n + 1).pow(4)).map(move |mut i| {
        let mut a = vec![0; 4];
        for s in a.iter_mut() {
            *s = i % (n + 1);
            i /= n + 1;
        }
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn guard_matches_bounded_semantics(phi in arithmetic_formula(), n in 1u64..=4) {
        let guarded = guard_transform(&phi).unwrap();
        for a in assignments(n) {
            prop_assert_eq!(eval_bounded(&phi, &a, n).unwrap(), eval_infinite_u64(&guarded, &a, n).unwrap(), "{} at {:?}", phi, a);
        }
    }

    #[test]
    fn atom_decomposition_round_trips(phi in arithmetic_formula(), n in 1u64..=4) {
        let d = atoms_decompose(&phi).unwrap();
        for a in assignments(n) {
            let combined = d.combine(|atom| eval_bounded(atom, &a, n)).unwrap();
            prop_assert_eq!(combined, eval_bounded(&phi, &a, n).unwrap());
        }
    }

    #[test]
    fn order_elimination_is_exact(phi in quantified_order_formula(), n in 1u64..=4) {
        let out = qe_order(&phi).unwrap();
        prop_assert!(out.is_quantifier_free());
        for a in assignments(n) {
            prop_assert_eq!(eval_bounded(&phi, &a, n).unwrap(), eval_bounded(&out, &a, n).unwrap(), "{} -> {}", phi, out);
        }
    }

    #[test]
    fn formulas_print_and_parse_back(phi in arithmetic_formula()) {
        prop_assert_eq!(parse_formula(&phi.to_string()).unwrap(), phi);
    }
}
