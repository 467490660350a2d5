//! Property tests over generated inputs: serialization round trips, flip
//! involution, and the layers-partition law.

use std::collections::BTreeSet;

use proptest::prelude::*;

use cwlab_core::graph::{apply_flip, ColouredGraph, FlipSpec};
use cwlab_core::tree::{layers, SetTree, Split};

fn arb_graph() -> impl Strategy<Value = ColouredGraph> {
    (1usize..=8).prop_flat_map(|n| {
        let k = 1usize..=n.min(3);
        (Just(n), k).prop_flat_map(move |(n, k)| {
            let colours = proptest::collection::vec(1..=k as u32, n);
            let edges = proptest::collection::btree_set((0..n as u32, 0..n as u32), 0..=n * 2);
            (Just(n), Just(k), colours, edges).prop_filter_map(
                "valid coloured graph",
                |(n, k, mut colour, edges)| {
                    for c in 1..=k as u32 {
                        if !colour.contains(&c) {
                            colour[c as usize - 1] = c;
                        }
                    }
                    let edges: Vec<(u32, u32)> =
                        edges.into_iter().filter(|(u, v)| u != v).collect();
                    ColouredGraph::new(n, k, colour, edges).ok()
                },
            )
        })
    })
}

fn arb_tree() -> impl Strategy<Value = SetTree> {
    (1usize..=6).prop_flat_map(|ground| {
        proptest::collection::vec(
            proptest::collection::btree_set(0..ground as u32, 1..=ground),
            0..=4,
        )
        .prop_filter_map("laminar family", move |mut nodes| {
            nodes.push((0..ground as u32).collect());
            nodes.sort();
            nodes.dedup();
            SetTree::new(ground, nodes).ok()
        })
    })
}

proptest! {
    #[test]
    fn graph_json_round_trip(g in arb_graph()) {
        let s = serde_json::to_string(&g).unwrap();
        let back: ColouredGraph = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(g, back);
    }

    #[test]
    fn tree_json_round_trip(t in arb_tree()) {
        let s = serde_json::to_string(&t).unwrap();
        let back: SetTree = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(t, back);
    }

    #[test]
    fn flip_sequences_cancel(g in arb_graph(), pairs in proptest::collection::vec((1u32..=3, 1u32..=3), 0..4)) {
        let k = g.k() as u32;
        let pairs: Vec<(u32, u32)> = pairs
            .into_iter()
            .map(|(a, b)| ((a - 1) % k + 1, (b - 1) % k + 1))
            .collect();
        let mut spec = pairs.clone();
        let mut reversed: Vec<(u32, u32)> = pairs.into_iter().rev().collect();
        spec.append(&mut reversed);
        // a sequence followed by its reverse is the identity
        let back = apply_flip(&g, &FlipSpec::new(spec)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn layers_always_partition(t in arb_tree(), levels in proptest::collection::vec(-2i64..=2, 0..16)) {
        let level: Vec<i64> = (0..t.node_count())
            .map(|i| levels.get(i).copied().unwrap_or(0))
            .collect();
        let ls = layers(&t, &Split { level }).unwrap();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut total = 0;
        for layer in ls {
            total += layer.len();
            for id in layer {
                prop_assert!(seen.insert(id), "node {} in two layers", id);
            }
        }
        prop_assert_eq!(total, t.node_count());
    }
}
