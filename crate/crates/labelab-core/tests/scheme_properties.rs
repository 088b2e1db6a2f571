//! Decoder identities and encoder round trips.

use labelab_core::decoders::{
    ceil_log2, conjunction_decoder, decode, decode_graph, equality_dfa, lex_less_dfa, negation_decoder, verify,
    BitLabel, Decoder, LabelingScheme, PairScope,
};
use labelab_core::graph::{degeneracy, enumerate_graphs, induced_subgraph, is_dichotomic, is_linear_neighborhood, Graph};
use labelab_core::schemes::{
    and_pointer_forest_encode, dichotomic_encode, equality_scheme, interval_bit_labels, interval_encode,
    interval_scheme, linear_neighborhood_encode, or_pointer_encode, order_scheme, IntervalModel,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn label(len: usize) -> impl Strategy<Value = BitLabel> {
    prop::collection::vec(any::<bool>(), len).prop_map(BitLabel)
}

fn label_pair(max: usize) -> impl Strategy<Value = (BitLabel, BitLabel)> {
    (0..=max).prop_flat_map(|len| (label(len), label(len)))
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| Graph::from_fn(n, false, |u, v| u != v && bits[u.min(v) * n + u.max(v)]))
    })
}

/// Forests from a parent choice per vertex (`None` starts a new tree).
fn forest(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<Option<prop::sample::Index>>(), n).prop_map(move |parents| {
            let mut g = Graph::edgeless(n, false);
            for (v, p) in parents.iter().enumerate().skip(1) {
                if let Some(i) = p {
                    g.set_edge(v, i.index(v), true);
                }
            }
            g
        })
    })
}

fn lex() -> LabelingScheme {
    LabelingScheme::new(Decoder::Dfa(lex_less_dfa()), 1)
}

fn neq() -> LabelingScheme {
    LabelingScheme::new(Decoder::Dfa(equality_dfa(true)), 1)
}

proptest! {
    #[test]
    fn decoders_are_deterministic((x, y) in label_pair(12)) {
        for d in [Decoder::Dfa(lex_less_dfa()), Decoder::Dfa(equality_dfa(false)), Decoder::Const(true)] {
            prop_assert_eq!(d.accepts(&x, &y).unwrap(), d.accepts(&x, &y).unwrap());
        }
    }

    #[test]
    fn conjunction_is_pointwise((x, y) in (0usize..=6).prop_flat_map(|w| (label(2 * w), label(2 * w)))) {
        let w = x.len() / 2;
        let both = conjunction_decoder(&lex(), &neq());
        let expected = decode(&lex(), &x.slice(0, w), &y.slice(0, w)).unwrap()
            && decode(&neq(), &x.slice(w, 2 * w), &y.slice(w, 2 * w)).unwrap();
        prop_assert_eq!(decode(&both, &x, &y).unwrap(), expected);
    }

    #[test]
    fn negation_is_pointwise((x, y) in (0usize..=6).prop_flat_map(|w| (label(2 * w), label(2 * w)))) {
        let not = negation_decoder(&LabelingScheme::new(Decoder::Interval, 2));
        prop_assert_eq!(decode(&not, &x, &y).unwrap(), !Decoder::Interval.accepts(&x, &y).unwrap());
    }

    #[test]
    fn verified_labelings_restrict_to_induced_subgraphs(
        (labels, keep) in (2usize..=8).prop_flat_map(|n| {
            let len = ceil_log2(n);
            (prop::collection::vec(label(len), n), subsequence((0..n).collect::<Vec<_>>(), 1..=n))
        })
    ) {
        let s = lex();
        let g = decode_graph(&s, &labels).unwrap();
        prop_assert!(verify(&s, &labels, &g, PairScope::AllPairs).unwrap());
        prop_assume!(ceil_log2(keep.len()) == ceil_log2(labels.len()));
        let h = induced_subgraph(&g, &keep).unwrap();
        let restricted: Vec<BitLabel> = keep.iter().map(|&v| labels[v].clone()).collect();
        prop_assert!(verify(&s, &restricted, &h, PairScope::AllPairs).unwrap());
    }

    #[test]
    fn interval_labels_round_trip(iv in prop::collection::vec((0i64..20, 0i64..8), 1..=10)) {
        let m = IntervalModel::new(iv.iter().map(|&(a, w)| (a, a + w)).collect()).unwrap();
        let enc = interval_encode(&m).unwrap();
        prop_assert_eq!(&enc.graph, &m.graph());
        prop_assert!(verify(&interval_scheme(), &interval_bit_labels(&enc), &m.graph(), PairScope::DistinctPairs).unwrap());
    }

    #[test]
    fn or_pointer_respects_the_edge_bound(g in simple_graph(8)) {
        let c = degeneracy(&g).unwrap().0;
        let l = or_pointer_encode(&g, c).unwrap();
        prop_assert!(l.verify(&g) && l.is_bijective());
        prop_assert!(g.proper_edge_count() <= c * g.n());
    }

    #[test]
    fn forest_labels_use_few_ids(g in forest(10)) {
        let l = and_pointer_forest_encode(&g).unwrap();
        prop_assert!(l.verify(&g));
        prop_assert_eq!(l.k(), 2);
        let mut ids = l.ids.clone();
        ids.sort_unstable();
        ids.dedup();
        prop_assert!(ids.len() <= g.n() + 1);
    }
}

/// Numeric labels verify under a two-number scheme on all pairs `u != v`.
fn numeric_verifies(s: &labelab_core::logic::FoScheme, labels: &[[u64; 2]], g: &Graph) -> bool {
    let n = g.n();
    (0..n).all(|u| (0..n).all(|v| u == v || s.accepts(n, &labels[u], &labels[v]).unwrap() == g.has_edge(u, v)))
}

#[test]
fn neighborhood_encoders_accept_exactly_their_classes() {
    for n in 1..=4 {
        for g in enumerate_graphs(n, true, false).unwrap() {
            match dichotomic_encode(&g) {
                Ok(l) => assert!(is_dichotomic(&g) && numeric_verifies(&equality_scheme(), &l, &g), "{g:?}"),
                Err(_) => assert!(!is_dichotomic(&g)),
            }
            match linear_neighborhood_encode(&g) {
                Ok(l) => assert!(is_linear_neighborhood(&g) && numeric_verifies(&order_scheme(), &l, &g), "{g:?}"),
                Err(_) => assert!(!is_linear_neighborhood(&g)),
            }
        }
    }
}
