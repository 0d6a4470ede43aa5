#![allow(dead_code)]

use hatcheck::graph::RootedTree;
use hatcheck::{ColorBudget, Graph};
use proptest::prelude::*;

/// Graphs on `lo..=hi` vertices, each possible edge present independently.
pub fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
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

pub fn connected_graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    graphs(lo, hi).prop_filter("connected", |g| g.is_connected())
}

/// Rooted trees on `1..=hi` vertices: vertex `i > 0` hangs below a random
/// earlier vertex, so 0 is the root.
pub fn rooted_trees(hi: usize) -> impl Strategy<Value = RootedTree> {
    (1..=hi).prop_flat_map(|n| {
        (1..n).map(|i| 0..i).collect::<Vec<_>>().prop_map(move |ps| {
            let mut parent = vec![None];
            parent.extend(ps.into_iter().map(Some));
            RootedTree::from_parents(parent).unwrap()
        })
    })
}

pub fn budgets(n: usize, hi: u32) -> impl Strategy<Value = ColorBudget> {
    proptest::collection::vec(1..=hi, n).prop_map(|q| ColorBudget::new(q).unwrap())
}

/// Every connected graph on `n` vertices, up to relabelling by sorted
/// degree sequence and edge count (exact for `n <= 4`).
pub fn connected_graphs_on(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let mut degs: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        degs.sort_unstable();
        if seen.insert((degs, g.edge_count())) {
            out.push(g);
        }
    }
    out
}
