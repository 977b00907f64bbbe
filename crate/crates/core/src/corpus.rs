//! Exhaustive enumeration of small directed multigraphs and of the morphisms between them.
//!
//! A graph on nodes `x0..x{n-1}` is determined up to arc relabeling by the
//! multiset of its `(source, target)` pairs, so each multiset is produced
//! once, arcs sorted and named `a0, a1, …`.

use crate::graph::{ArcIx, DirectedGraph, NodeIx};
use crate::scc::weak_components;

/// Every graph with at most `max_nodes` nodes and `max_arcs` arcs, up to arc
/// relabeling, ordered by node count, then arc count, then arc multiset.
pub fn graphs_up_to(max_nodes: usize, max_arcs: usize) -> Vec<DirectedGraph> {
    let mut out = Vec::new();
    for n in 0..=max_nodes {
        let types: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        for m in 0..=max_arcs {
            if n == 0 && m > 0 {
                break;
            }
            let mut current = Vec::with_capacity(m);
            multisets(&types, 0, m, &mut current, &mut |arcs| {
                out.push(DirectedGraph::from_index_pairs(n, arcs));
            });
        }
    }
    out
}

fn multisets(
    types: &[(usize, usize)],
    from: usize,
    remaining: usize,
    current: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    for k in from..types.len() {
        current.push(types[k]);
        multisets(types, k, remaining - 1, current, emit);
        current.pop();
    }
}

/// The connected members of [`graphs_up_to`] (the empty graph excluded).
pub fn connected_graphs_up_to(max_nodes: usize, max_arcs: usize) -> Vec<DirectedGraph> {
    graphs_up_to(max_nodes, max_arcs)
        .into_iter()
        .filter(|g| weak_components(g).1 == 1)
        .collect()
}

/// Smallest sorted `(source, target)` list over all node permutations.
pub fn canonical_form(g: &DirectedGraph) -> (usize, Vec<(usize, usize)>) {
    let n = g.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut arcs: Vec<(usize, usize)> = g.arcs().map(|a| (perm[g.source(a).0], perm[g.target(a).0])).collect();
        arcs.sort_unstable();
        if best.as_ref().is_none_or(|b| arcs < *b) {
            best = Some(arcs);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (n, best.unwrap_or_default())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("p[i] qualifies");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One representative per isomorphism class, first occurrence kept.
pub fn up_to_isomorphism(graphs: Vec<DirectedGraph>) -> Vec<DirectedGraph> {
    let mut seen = std::collections::HashSet::new();
    graphs.into_iter().filter(|g| seen.insert(canonical_form(g))).collect()
}

/// Calls `visit(node_map, arc_map)` for every graph morphism `x → y`, node
/// maps in lexicographic order, arc choices in codomain order.
pub fn for_each_morphism(x: &DirectedGraph, y: &DirectedGraph, visit: &mut impl FnMut(&[NodeIx], &[ArcIx])) {
    if x.node_count() > 0 && y.node_count() == 0 {
        return;
    }
    // parallel-arc buckets of y
    let n = y.node_count();
    let mut between: Vec<Vec<ArcIx>> = vec![Vec::new(); n * n];
    for a in y.arcs() {
        between[y.source(a).0 * n + y.target(a).0].push(a);
    }
    let mut node_map = vec![NodeIx(0); x.node_count()];
    let mut arc_map = vec![ArcIx(0); x.arc_count()];
    loop {
        arcs_rec(x, &between, n, 0, &node_map, &mut arc_map, visit);
        // next node map, odometer style
        let mut k = 0;
        while k < node_map.len() {
            node_map[k].0 += 1;
            if node_map[k].0 < n {
                break;
            }
            node_map[k] = NodeIx(0);
            k += 1;
        }
        if k == node_map.len() {
            break;
        }
    }
}

fn arcs_rec(
    x: &DirectedGraph,
    between: &[Vec<ArcIx>],
    n: usize,
    k: usize,
    node_map: &[NodeIx],
    arc_map: &mut Vec<ArcIx>,
    visit: &mut impl FnMut(&[NodeIx], &[ArcIx]),
) {
    if k == x.arc_count() {
        visit(node_map, arc_map);
        return;
    }
    let a = ArcIx(k);
    let bucket = &between[node_map[x.source(a).0].0 * n + node_map[x.target(a).0].0];
    for &b in bucket {
        arc_map[k] = b;
        arcs_rec(x, between, n, k + 1, node_map, arc_map, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        // multisets of size ≤ m over n² arc types: C(n² + m, m)
        assert_eq!(graphs_up_to(0, 4).len(), 1);
        assert_eq!(graphs_up_to(1, 4).len(), 1 + 5);
        assert_eq!(graphs_up_to(2, 2).len(), 1 + 3 + 15);
        assert_eq!(graphs_up_to(3, 4).len(), 1 + 5 + 70 + 715);
    }

    #[test]
    fn isomorphism_classes() {
        // two nodes, one arc: the loop and the non-loop
        let two_one: Vec<_> = graphs_up_to(2, 1).into_iter().filter(|g| g.node_count() == 2 && g.arc_count() == 1).collect();
        assert_eq!(two_one.len(), 4);
        assert_eq!(up_to_isomorphism(two_one).len(), 2);
        assert_eq!(
            canonical_form(&DirectedGraph::from_index_pairs(3, &[(2, 1)])),
            canonical_form(&DirectedGraph::from_index_pairs(3, &[(0, 1)]))
        );
    }

    #[test]
    fn morphism_counts() {
        // Hom(c_2, c_1) has one element; Hom(c_1, c_2) is empty
        let c1 = DirectedGraph::standard_cycle(1);
        let c2 = DirectedGraph::standard_cycle(2);
        let mut count = 0;
        for_each_morphism(&c2, &c1, &mut |_, _| count += 1);
        assert_eq!(count, 1);
        count = 0;
        for_each_morphism(&c1, &c2, &mut |_, _| count += 1);
        assert_eq!(count, 0);
        // morphisms c_n → g are closed walks, so their count is the trace
        let g = DirectedGraph::from_index_pairs(2, &[(0, 1), (1, 0), (0, 0)]);
        for n in 1..6 {
            count = 0;
            for_each_morphism(&DirectedGraph::standard_cycle(n), &g, &mut |_, _| count += 1);
            assert_eq!(count as u128, g.adjacency_matrix().trace_of_power(n));
        }
        // from the empty graph there is exactly one
        count = 0;
        for_each_morphism(&DirectedGraph::empty(), &DirectedGraph::empty(), &mut |_, _| count += 1);
        assert_eq!(count, 1);
    }
}
