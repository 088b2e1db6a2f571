//! Search soundness, monotonicity, determinism; reduction invariants.

use labelab_core::boolfn::BooleanFunctionTable;
use labelab_core::decoders::{ceil_log2, equality_dfa, lex_less_dfa, verify, Decoder, LabelingScheme, PairScope};
use labelab_core::graph::{induced_subgraph, Graph};
use labelab_core::oracle::IntervalOracle;
use labelab_core::reductions::{
    compose_representations, search_algebraic, verify_algebraic, verify_subgraph, SubgraphRepresentation,
};
use labelab_core::search::{find_labeling, Labeling, Outcome, SearchBudget};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn digraph(min_n: usize, max_n: usize, loops: bool) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| Graph::from_fn(n, true, |u, v| (loops || u != v) && bits[u * n + v]))
    })
}

fn schemes() -> Vec<LabelingScheme> {
    vec![
        LabelingScheme::new(Decoder::Dfa(lex_less_dfa()), 1),
        LabelingScheme::new(Decoder::Dfa(equality_dfa(true)), 2),
    ]
}

fn search(s: &LabelingScheme, g: &Graph) -> Outcome<Labeling<labelab_core::decoders::BitLabel>> {
    find_labeling(s, g, false, SearchBudget::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn found_labelings_verify(g in digraph(1, 5, true)) {
        for s in schemes() {
            if let Outcome::Found(Labeling::Plain(labels)) = search(&s, &g) {
                prop_assert!(verify(&s, &labels, &g, PairScope::AllPairs).unwrap());
            }
        }
    }

    #[test]
    fn membership_is_monotone(
        (g, keep) in (2usize..=5).prop_flat_map(|n| (digraph(n, n, true), subsequence((0..n).collect::<Vec<_>>(), 1..=n)))
    ) {
        prop_assume!(ceil_log2(keep.len()) == ceil_log2(g.n()));
        let h = induced_subgraph(&g, &keep).unwrap();
        for s in schemes() {
            if matches!(search(&s, &g), Outcome::Found(_)) {
                prop_assert!(matches!(search(&s, &h), Outcome::Found(_)));
            }
        }
    }

    #[test]
    fn witness_is_independent_of_worker_count(g in digraph(1, 5, true)) {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| schemes().iter().map(|s| search(s, &g)).collect::<Vec<_>>())
        };
        prop_assert_eq!(run(1), run(4));
    }

    #[test]
    fn identity_representation_verifies(g in digraph(1, 6, true)) {
        let rep = identity(&g);
        prop_assert!(verify_subgraph(&g, &rep).unwrap());
    }

    #[test]
    fn self_loops_do_not_change_verdicts(g in digraph(1, 4, false), v in any::<prop::sample::Index>()) {
        let mut looped = g.clone();
        let v = v.index(g.n());
        looped.set_edge(v, v, true);
        let rep = identity(&g);
        prop_assert_eq!(verify_subgraph(&g, &rep).unwrap(), verify_subgraph(&looped, &rep).unwrap());
        let witnesses = [g.clone()];
        let id = BooleanFunctionTable::identity();
        prop_assert_eq!(
            verify_algebraic(&g, &id, &witnesses).unwrap(),
            verify_algebraic(&looped, &id, &witnesses).unwrap()
        );
    }
}

fn identity(g: &Graph) -> SubgraphRepresentation {
    let f = BooleanFunctionTable::from_fn(1, |a| a[0]).unwrap();
    SubgraphRepresentation::new(g.clone(), f, (0..g.n()).map(|v| vec![v]).collect()).unwrap()
}

#[test]
fn composed_representations_verify() {
    // g ≤ H1 via the complement; H1 ≤ H2 via a shifted copy that reads
    // the off-diagonal entry of distinct tuples.
    let not = BooleanFunctionTable::from_fn(4, |a| !a[1]).unwrap();
    let off = BooleanFunctionTable::from_fn(4, |a| a[1]).unwrap();
    for n in 1..=3 {
        for g in labelab_core::graph::enumerate_graphs(n, true, false).unwrap() {
            let h1 = Graph::from_fn(n, true, |u, v| u != v && !g.has_edge(u, v));
            let first = SubgraphRepresentation::new(h1.clone(), not.clone(), (0..n).map(|v| vec![v, v]).collect()).unwrap();
            assert!(verify_subgraph(&g, &first).unwrap());
            let h2 = Graph::from_fn(n + 1, true, |x, y| x >= 1 && y < n && h1.has_edge(x - 1, y));
            let second = SubgraphRepresentation::new(h2, off.clone(), (0..n).map(|v| vec![v + 1, v]).collect()).unwrap();
            assert!(verify_subgraph(&h1, &second).unwrap());
            let both = compose_representations(&first, &second).unwrap();
            assert_eq!(both.k, 4);
            assert!(verify_subgraph(&g, &both).unwrap(), "{g:?}");
        }
    }
}

#[test]
fn algebraic_search_results_verify() {
    let and = BooleanFunctionTable::and();
    for n in 1..=4 {
        for g in labelab_core::graph::canonical_graphs(n, false, false).unwrap() {
            if let Outcome::Found(ws) = search_algebraic(&g, &and, &IntervalOracle, SearchBudget::default()).unwrap() {
                assert!(verify_algebraic(&g, &and, &ws).unwrap());
            }
        }
    }
}
