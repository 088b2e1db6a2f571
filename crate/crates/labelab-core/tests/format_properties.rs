//! Text formats round-trip their values.

use labelab_core::boolfn::BooleanFunctionTable;
use labelab_core::decoders::BitLabel;
use labelab_core::formats::{
    parse_bf, parse_graph, parse_intervals, parse_labels, parse_pointer, write_bf, write_graph, write_intervals,
    write_labels, write_pointer, LabelFile,
};
use labelab_core::graph::Graph;
use labelab_core::schemes::{IntervalModel, PointerLabeling, PointerMode};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=7, any::<bool>(), any::<bool>()).prop_flat_map(|(n, directed, loops)| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            Graph::from_fn(n, directed, |u, v| (loops || u != v) && bits[u * n + v])
        })
    })
}

proptest! {
    #[test]
    fn graphs_round_trip(g in graph()) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn bit_labels_round_trip(ls in (0usize..=6, 1usize..=6).prop_flat_map(|(w, n)| prop::collection::vec(prop::collection::vec(any::<bool>(), w), n))) {
        let f = LabelFile::Bits(ls.into_iter().map(BitLabel).collect());
        prop_assert_eq!(parse_labels(&write_labels(&f)).unwrap(), f);
    }

    #[test]
    fn numeric_labels_round_trip(ls in (1usize..=3, 1usize..=6).prop_flat_map(|(k, n)| prop::collection::vec(prop::collection::vec(any::<u64>(), k), n))) {
        let f = LabelFile::Num(ls);
        prop_assert_eq!(parse_labels(&write_labels(&f)).unwrap(), f);
    }

    #[test]
    fn pointer_labelings_round_trip(
        (ids, slots, and) in (1usize..=6, 0usize..=3).prop_flat_map(|(n, k)| (
            prop::collection::vec(1..=n, n),
            prop::collection::vec(prop::collection::vec(1..=n, k), n),
            any::<bool>(),
        ))
    ) {
        let mode = if and { PointerMode::And } else { PointerMode::Or };
        let l = PointerLabeling::new(ids, slots, mode).unwrap();
        prop_assert_eq!(parse_pointer(&write_pointer(&l)).unwrap(), l);
    }

    #[test]
    fn tables_round_trip(arity in 0usize..=6, seed in any::<u64>()) {
        let f = BooleanFunctionTable::from_fn(arity, |a| a.iter().enumerate().fold(seed, |h, (i, &b)| h.rotate_left(i as u32 + 1) ^ b as u64) & 1 == 1).unwrap();
        prop_assert_eq!(parse_bf(&write_bf(&f)).unwrap(), f);
    }

    #[test]
    fn interval_models_round_trip(iv in prop::collection::vec((-50i64..50, 0i64..20), 1..=8)) {
        let m = IntervalModel::new(iv.iter().map(|&(a, w)| (a, a + w)).collect()).unwrap();
        prop_assert_eq!(parse_intervals(&write_intervals(&m)).unwrap(), m);
    }
}
