use std::collections::HashSet;

use hog_core::corpus::{for_each_morphism, graphs_up_to, up_to_isomorphism};
use hog_core::euler::{covering_cycle, euler_check, euler_cycle, euler_decompose};
use hog_core::homology::{
    boundary_0, boundary_1, decompose_positive_chain, fundamental_chain, homology_summary, minimal_covering_walk,
    ArcChain,
};
use hog_core::homotopy::{
    attach_cycle, cofibrant_replacement, count_hom_cycles, enumerate_hom_cycles, glue_nodes, is_weak_equivalence,
};
use hog_core::io::{graph_from_edge_list, graph_from_json, graph_to_edge_list, graph_to_json};
use hog_core::pagerank::{markov_from_graph, pagerank, PageRankParams};
use hog_core::reflexive::{add_degeneracies, forget_reflexive, strip_degeneracies};
use hog_core::scc::{is_acyclic, is_strongly_connected, scc_decompose};
use hog_core::{ArcIx, ClosedWalk, DirectedGraph, GraphMorphism, NodeIx};
use proptest::prelude::*;

fn graph(max_nodes: usize, max_arcs: usize) -> impl Strategy<Value = DirectedGraph> {
    (1..=max_nodes).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_arcs).prop_map(move |arcs| DirectedGraph::from_index_pairs(n, &arcs))
    })
}

fn reachability(g: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for a in g.arcs() {
        r[g.source(a).0][g.target(a).0] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn balanced(g: &DirectedGraph) -> bool {
    g.nodes().all(|x| g.in_degree(x) == g.out_degree(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closed_walk_count_is_trace(g in graph(6, 9), n in 1usize..=8) {
        let count = count_hom_cycles(&g, n);
        prop_assume!(count <= 200_000);
        let set = enumerate_hom_cycles(&g, n, 200_000).unwrap();
        prop_assert_eq!(set.len() as u128, count);
        for w in &set.morphisms {
            prop_assert!(ClosedWalk::new(&g, w.base(), w.arcs().to_vec()).is_ok());
        }
    }

    #[test]
    fn scc_matches_mutual_reachability(g in graph(5, 8)) {
        let r = reachability(&g);
        let d = scc_decompose(&g);
        for x in g.nodes() {
            for y in g.nodes() {
                let same = d.component_of[x.0] == d.component_of[y.0];
                prop_assert_eq!(same, r[x.0][y.0] && r[y.0][x.0]);
            }
        }
        prop_assert!(is_acyclic(&d.condensation));
        prop_assert_eq!(is_strongly_connected(&g).unwrap(), d.len() == 1);
        // reverse topological order: arcs between components never point to a later one
        for a in g.arcs() {
            prop_assert!(d.component_of[g.source(a).0] >= d.component_of[g.target(a).0]);
        }
    }

    #[test]
    fn surgery_morphisms_validate_and_compose(g in graph(5, 7), x in 0usize..5, y in 0usize..5, m in 1usize..4) {
        let g = g.into_shared();
        let (x, y) = (NodeIx(x % g.node_count()), NodeIx(y % g.node_count()));
        let attached = attach_cycle(&g, x, m).unwrap();
        prop_assert!(attached.morphism.validate());
        prop_assert_eq!(attached.graph.arc_count(), g.arc_count() + m);
        if balanced(&g) {
            prop_assert!(balanced(&attached.graph));
        }
        prop_assume!(x != y);
        let glued = glue_nodes(&g, x, y).unwrap();
        prop_assert!(glued.morphism.validate());
        if balanced(&g) {
            prop_assert!(balanced(&glued.graph));
        }
        // identities are neutral and composition stays valid
        let id = GraphMorphism::identity(&g);
        prop_assert_eq!(id.compose(&glued.morphism).unwrap(), glued.morphism.clone());
        let again = glue_nodes(&glued.graph, NodeIx(0), NodeIx(glued.graph.node_count() - 1));
        if let Ok(second) = again {
            let left = id.compose(&glued.morphism).unwrap().compose(&second.morphism).unwrap();
            let right = id.compose(&glued.morphism.compose(&second.morphism).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert!(left.validate());
        }
    }

    #[test]
    fn cofibrant_replacement_is_idempotent(g in graph(6, 9)) {
        let g = g.into_shared();
        let c = cofibrant_replacement(&g);
        prop_assert!(c.embedding.validate());
        prop_assert!(is_weak_equivalence(&c.embedding).unwrap().is_weak_equivalence);
        prop_assert_eq!(&*cofibrant_replacement(&c.graph).graph, &*c.graph);
    }

    #[test]
    fn euler_constructions_are_consistent(g in graph(5, 9)) {
        prop_assume!(g.arc_count() > 0);
        let report = euler_check(&g).unwrap();
        match euler_cycle(&g) {
            Ok(w) => {
                prop_assert!(report.is_eulerian);
                let shared = g.clone().into_shared();
                let q = w.as_morphism(&shared);
                prop_assert!(q.validate());
                prop_assert!(q.is_surjective_on_nodes() && q.is_injective_on_arcs() && q.is_surjective_on_arcs());
                let d = euler_decompose(&g).unwrap();
                let replayed = d.replay().unwrap();
                prop_assert!(euler_check(&replayed).unwrap().is_eulerian);
                prop_assert!(d.reproduces(&g).unwrap());
            }
            Err(_) => prop_assert!(!report.is_eulerian),
        }
    }

    #[test]
    fn covering_walks(g in graph(4, 7)) {
        prop_assume!(g.arc_count() > 0 && is_strongly_connected(&g).unwrap());
        let cover = covering_cycle(&g).unwrap();
        prop_assert!(ClosedWalk::new(&g, cover.base(), cover.arcs().to_vec()).is_ok());
        let covered: HashSet<ArcIx> = cover.arcs().iter().copied().collect();
        prop_assert_eq!(covered.len(), g.arc_count());
        let best = minimal_covering_walk(&g).unwrap();
        prop_assert!(best.n_of_x <= cover.len());
        prop_assert!(best.n_of_x >= g.arc_count());
        prop_assert_eq!(best.n_of_x == g.arc_count(), euler_check(&g).unwrap().is_eulerian);
    }

    #[test]
    fn homology_identities(g in graph(6, 9), coeffs in prop::collection::vec(-50i64..=50, 9)) {
        let u = ArcChain::new(&g, coeffs[..g.arc_count()].to_vec()).unwrap();
        prop_assert_eq!(boundary_0(&boundary_1(&u)), 0);
        let s = homology_summary(&g);
        prop_assert_eq!(s.h1_rank + g.node_count(), g.arc_count() + s.component_count);
        prop_assert_eq!(s.h0_rank, s.component_count - 1);
        for b in &s.h1_basis {
            prop_assert!(boundary_1(b).is_zero());
        }
    }

    #[test]
    fn balanced_fundamental_chains_decompose(g in graph(5, 9), k in 1i64..4) {
        prop_assume!(balanced(&g));
        let coeffs = vec![k; g.arc_count()];
        let u = ArcChain::new(&g, coeffs.clone()).unwrap();
        let d = decompose_positive_chain(&u).unwrap();
        prop_assert_eq!(d.arc_multiset(&g), coeffs);
        let extractions: u64 = d.multiplicities.iter().sum();
        prop_assert!(extractions <= u.length());
        prop_assert!(fundamental_chain(&g).boundary().is_zero());
    }

    #[test]
    fn degeneracies_round_trip(g in graph(6, 9)) {
        let r = add_degeneracies(&g);
        prop_assert_eq!(&strip_degeneracies(&r), &g);
        let forgotten = forget_reflexive(&r);
        prop_assert_eq!(forgotten.arc_count(), g.arc_count() + g.node_count());
        for x in g.nodes() {
            prop_assert!(forgotten.is_loop(r.degeneracy(x)));
        }
        prop_assert!(scc_decompose(&forgotten).same_partition(&scc_decompose(&strip_degeneracies(&r))));
    }

    #[test]
    fn pagerank_is_a_probability_fixed_point(g in graph(8, 16)) {
        let params = PageRankParams::default();
        let v = pagerank(&g, params).unwrap().values();
        prop_assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(v.iter().all(|&s| s >= 0.0));
        let m = markov_from_graph(&g).unwrap();
        prop_assert!(m.is_column_stochastic(1e-12));
        let residual: f64 = m.damped_apply(params.damping, &v).iter().zip(&v).map(|(a, b)| (a - b).abs()).sum();
        prop_assert!(residual < 10.0 * params.tol);
    }

    #[test]
    fn text_formats_round_trip(g in graph(6, 9)) {
        prop_assert_eq!(&graph_from_json(&graph_to_json(&g)).unwrap(), &g);
        // edge lists drop isolated nodes
        let back = graph_from_edge_list(&graph_to_edge_list(&g)).unwrap();
        prop_assert_eq!(back.arc_count(), g.arc_count());
        for a in g.arcs() {
            let b = back.arc(g.arc_id(a)).unwrap();
            prop_assert_eq!(back.node_id(back.source(b)), g.node_id(g.source(a)));
            prop_assert_eq!(back.node_id(back.target(b)), g.node_id(g.target(a)));
        }
    }
}

/// Between strongly connected graphs the weak equivalences are exactly the isomorphisms.
#[test]
fn weak_equivalences_between_strongly_connected_graphs_are_isomorphisms() {
    let corpus: Vec<_> = up_to_isomorphism(graphs_up_to(3, 4))
        .into_iter()
        .filter(|g| is_strongly_connected(g).unwrap_or(false))
        .map(DirectedGraph::into_shared)
        .collect();
    let mut checked = 0;
    for x in &corpus {
        for y in &corpus {
            for_each_morphism(x, y, &mut |nodes, arcs| {
                let f = GraphMorphism::new(x.clone(), y.clone(), nodes.to_vec(), arcs.to_vec()).unwrap();
                assert_eq!(is_weak_equivalence(&f).unwrap().is_weak_equivalence, f.is_isomorphism());
                checked += 1;
            });
        }
    }
    assert!(checked > 1000);
}

#[test]
fn standard_cycles_have_exactly_their_rotations() {
    for n in 1..=10 {
        let c = DirectedGraph::standard_cycle(n);
        let set = enumerate_hom_cycles(&c, n, 1_000).unwrap();
        assert_eq!(set.len(), n);
        let first = &set.morphisms[0];
        for (k, w) in set.morphisms.iter().enumerate() {
            assert_eq!(w, &first.rotated(&c, k));
        }
    }
}
