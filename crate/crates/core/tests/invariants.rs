use proptest::prelude::*;

use critset::critical::{critical_difference, critical_independent_witness, diadem, is_critical_independent, ker};
use critset::harness::GraphRecord;
use critset::matching::{deficiency, maximum_matching_general};
use critset::{Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph_and_sets(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        let set = move || prop::collection::vec(any::<bool>(), n).prop_map(|b| {
            b.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect::<VertexSet>()
        });
        (Just(g), set(), set())
    })
}

proptest! {
    #[test]
    fn difference_bounds((g, x, _) in graph_and_sets(18)) {
        let d = critical_difference(&g);
        prop_assert!(d >= 0);
        prop_assert!(g.difference(&x).unwrap() <= d);
        prop_assert!(g.difference(&x).unwrap() >= -(g.n() as i64));
    }

    #[test]
    fn neighborhood_of_union((g, x, y) in graph_and_sets(18)) {
        let nx = g.neighborhood(&x, false).unwrap();
        let ny = g.neighborhood(&y, false).unwrap();
        prop_assert_eq!(g.neighborhood(&x.union(&y), false).unwrap(), nx.union(&ny));
        let closed = g.neighborhood(&x, true).unwrap();
        prop_assert_eq!(closed, nx.union(&x));
    }

    #[test]
    fn supermodular((g, x, y) in graph_and_sets(18)) {
        let lhs = g.difference(&x.union(&y)).unwrap() + g.difference(&x.intersection(&y)).unwrap();
        prop_assert!(lhs >= g.difference(&x).unwrap() + g.difference(&y).unwrap());
    }

    #[test]
    fn ker_witness_diadem_chain(g in graph(18)) {
        let (k, w, dm) = (ker(&g), critical_independent_witness(&g), diadem(&g));
        prop_assert!(is_critical_independent(&g, &w).unwrap());
        prop_assert!(is_critical_independent(&g, &k).unwrap());
        prop_assert!(k.is_subset(&w));
        prop_assert!(w.is_subset(&dm));
        prop_assert_eq!(k.is_empty(), critical_difference(&g) == 0);
    }

    #[test]
    fn matching_is_valid(g in graph(24)) {
        let m = maximum_matching_general(&g);
        prop_assert!(m.is_valid_for(&g));
        prop_assert_eq!(deficiency(&g), g.n() - 2 * m.len());
        prop_assert!(critical_difference(&g) >= 0);
    }

    #[test]
    fn record_round_trip(g in graph(12)) {
        prop_assert_eq!(GraphRecord::of(&g).to_graph().unwrap(), g);
    }
}
