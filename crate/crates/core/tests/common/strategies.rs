//! Proptest strategies for small simple hypergraphs.

#![allow(dead_code)]

use hyperbetti::Hypergraph;
use proptest::prelude::*;

/// Simple hypergraphs on `2..=max_n` vertices with edges of `2..=max_size`
/// vertices; candidate edges comparable with an earlier one are dropped.
pub fn hypergraph(max_n: usize, max_size: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (2usize..=max_n)
        .prop_flat_map(move |n| {
            let sets = prop::collection::btree_set(0..n, 2..=max_size.min(n));
            (Just(n), prop::collection::vec(sets, 0..=max_m))
        })
        .prop_map(|(n, sets)| {
            let mut edges: Vec<Vec<usize>> = Vec::new();
            for s in sets {
                let e: Vec<usize> = s.into_iter().collect();
                let comparable = |f: &Vec<usize>| e.iter().all(|v| f.contains(v)) || f.iter().all(|v| e.contains(v));
                if !edges.iter().any(comparable) {
                    edges.push(e);
                }
            }
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            Hypergraph::build(labels, edges).unwrap()
        })
}

/// Simple graphs on `2..=max_n` vertices.
pub fn graph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (2usize..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| vec![u, v]));
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            Hypergraph::build(labels, edges).unwrap()
        })
}
