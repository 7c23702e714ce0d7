use std::collections::BTreeSet;

use etsearch::{classify, emit_alist, gamma, normal_projection, parse_alist, TannerGraph};
use proptest::prelude::*;

/// A random bipartite graph with `n ≤ 12` variables and `m ≤ 10` checks.
fn graphs() -> impl Strategy<Value = TannerGraph> {
    (1usize..=12, 1usize..=10)
        .prop_flat_map(|(n, m)| {
            (
                Just(n),
                Just(m),
                proptest::collection::btree_set((0..n, 0..m), 1..=n * m),
            )
        })
        .prop_map(|(n, m, edges)| {
            let edges: Vec<(usize, usize)> = edges.into_iter().collect();
            TannerGraph::from_edges(n, m, &edges).unwrap()
        })
}

fn graph_and_subset() -> impl Strategy<Value = (TannerGraph, Vec<usize>)> {
    graphs().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::btree_set(0..n, 1..=n.min(6)))
            .prop_map(|(g, s)| (g, s.into_iter().collect::<Vec<_>>()))
    })
}

proptest! {
    #[test]
    fn alist_text_round_trips(g in graphs()) {
        let text = emit_alist(&g);
        let back = parse_alist(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit_alist(&back), text);
    }

    #[test]
    fn unsatisfied_checks_match_a_direct_parity_count((g, s) in graph_and_subset()) {
        let inside: BTreeSet<usize> = s.iter().copied().collect();
        let mut odd = Vec::new();
        let mut even = Vec::new();
        for c in 0..g.m() {
            let k = g.chk_neighbors(c).iter().filter(|v| inside.contains(v)).count();
            if k % 2 == 1 {
                odd.push(c);
            } else if k > 0 {
                even.push(c);
            }
        }
        let summary = gamma(&g, &s).unwrap();
        prop_assert_eq!(&summary.gamma_o, &odd);
        prop_assert_eq!(&summary.gamma_e, &even);
        let c = classify(&g, &s).unwrap();
        prop_assert_eq!(c.class.b, odd.len());
        prop_assert!(c.flags.consistent());
    }

    #[test]
    fn quasi_normal_graph_preserves_degrees((g, s) in graph_and_subset()) {
        let c = classify(&g, &s).unwrap();
        let ng = normal_projection(&g, &s, true);
        prop_assert_eq!(ng.is_ok(), c.flags.is_ets);
        if let Ok(ng) = ng {
            let half = ng.half_edges.as_ref().unwrap();
            for (i, d) in ng.degrees().into_iter().enumerate() {
                prop_assert_eq!(d + half[i], g.var_degree(ng.nodes[i]));
            }
            prop_assert_eq!(ng.edges.len() * 2 + half.iter().sum::<usize>(),
                ng.nodes.iter().map(|&v| g.var_degree(v)).sum::<usize>());
        }
    }
}
