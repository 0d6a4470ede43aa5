mod common;

use common::{connected_graphs, graphs, rooted_trees};
use hatcheck::graph::{
    block_decomposition, circumference, closure, dfs_treedepth_certificate, greedy_proper_coloring,
    longest_path_length,
};
use hatcheck::Graph;
use proptest::prelude::*;

fn two_connected(g: &Graph) -> bool {
    g.vertex_count() >= 3 && g.is_connected() && block_decomposition(g).cut_vertices.is_empty()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dfs_edges_join_ancestor_and_descendant(g in connected_graphs(1, 8), root in 0usize..8) {
        let root = root % g.vertex_count();
        let cert = dfs_treedepth_certificate(&g, root).unwrap();
        prop_assert!(cert.certifies(&g));
        prop_assert_eq!(cert.tree.root(), root);
        prop_assert_eq!(cert.depth, cert.tree.height() + 1);
        for (u, v) in cert.tree.as_graph().edges() {
            prop_assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn dfs_depth_within_half_square_of_circumference(g in graphs(3, 7)) {
        prop_assume!(two_connected(&g));
        let c = circumference(&g, 20).unwrap();
        for root in g.vertices() {
            let cert = dfs_treedepth_certificate(&g, root).unwrap();
            prop_assert!(cert.depth <= c * c / 2, "depth {} c {}", cert.depth, c);
        }
    }

    #[test]
    fn long_paths_force_long_cycles(g in graphs(3, 7)) {
        prop_assume!(two_connected(&g));
        let c = circumference(&g, 20).unwrap();
        let l = longest_path_length(&g, 20).unwrap();
        prop_assert!(c * c > 2 * l, "c {} path {}", c, l);
    }

    #[test]
    fn blocks_partition_edges(g in graphs(1, 8)) {
        let dec = block_decomposition(&g);
        for (u, v) in g.edges() {
            let holders = dec.blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
            prop_assert_eq!(holders, 1);
        }
        for b in &dec.blocks {
            let h = g.induced_subgraph(b);
            prop_assert!(h.is_connected());
            prop_assert!(b.len() <= 2 || two_connected(&h));
        }
        let comps = g.components().len();
        for v in g.vertices() {
            let is_cut = dec.blocks_containing(v).len() > 1;
            prop_assert_eq!(dec.cut_vertices.contains(&v), is_cut);
            let (rest, _) = g.without(&[v]);
            let isolated = usize::from(g.degree(v) == 0);
            prop_assert_eq!(rest.components().len() + isolated > comps, is_cut);
        }
        for (b, v) in dec.terminal_blocks() {
            prop_assert!(dec.blocks[b].contains(&v));
        }
    }

    #[test]
    fn greedy_coloring_is_proper(g in graphs(1, 9)) {
        let col = greedy_proper_coloring(&g);
        for (u, v) in g.edges() {
            prop_assert_ne!(col.color_of[u], col.color_of[v]);
        }
        for class in &col.classes {
            prop_assert!(g.is_independent(class));
        }
        prop_assert!(col.classes.len() <= g.max_degree() + 1);
    }

    #[test]
    fn leaf_elimination_orders_are_valid(t in rooted_trees(9)) {
        let order = t.leaf_elimination_order();
        prop_assert!(t.is_leaf_elimination_order(&order));
        let mut rev = order.clone();
        rev.reverse();
        prop_assert!(t.vertex_count() == 1 || !t.is_leaf_elimination_order(&rev));
        let cl = closure(&t);
        for v in cl.vertices() {
            prop_assert_eq!(cl.degree(v), t.ancestors(v).len() + descendants(&t, v));
        }
    }
}

fn descendants(t: &hatcheck::RootedTree, v: usize) -> usize {
    (0..t.vertex_count()).filter(|&w| w != v && t.is_ancestor(v, w)).count()
}

#[test]
fn cycles_and_complete_graphs() {
    for n in 3..=7 {
        assert_eq!(circumference(&Graph::cycle(n), 20).unwrap(), n);
        assert_eq!(circumference(&Graph::complete(n), 20).unwrap(), n);
        assert_eq!(longest_path_length(&Graph::cycle(n), 20).unwrap(), n - 1);
    }
    assert_eq!(circumference(&Graph::path(5), 20).unwrap(), 0);
}
