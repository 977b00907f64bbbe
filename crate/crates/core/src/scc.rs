//! Strongly connected components and related connectivity predicates.
//!
//! Two nodes share a component when each is reachable from the other. The
//! relation is reflexive, so every node belongs to exactly one component even
//! when it lies on no cycle; such arcless singleton components are called
//! *trivial* here.

use crate::graph::{ArcIx, DirectedGraph, GraphBuilder, GraphError, NodeIx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Components in reverse topological order of the condensation; nodes inside
    /// each component are sorted by index.
    pub components: Vec<Vec<NodeIx>>,
    pub component_of: Vec<usize>,
    /// One node `"i"` per component, one arc `"i->j"` per pair of distinct components joined by an arc.
    pub condensation: DirectedGraph,
}

/// The subgraph induced by one strongly connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSubgraph {
    pub component: usize,
    pub nodes: Vec<NodeIx>,
    pub arcs: Vec<ArcIx>,
}

impl ComponentSubgraph {
    /// A single node with no arc inside the component.
    pub fn is_trivial(&self) -> bool {
        self.arcs.is_empty()
    }
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Whether `a` has both endpoints in the same component.
    pub fn is_inner_arc(&self, g: &DirectedGraph, a: ArcIx) -> bool {
        self.component_of[g.source(a).0] == self.component_of[g.target(a).0]
    }

    /// Node and inner-arc sets of every component, in component order.
    pub fn subgraphs(&self, g: &DirectedGraph) -> Vec<ComponentSubgraph> {
        let mut arcs = vec![Vec::new(); self.components.len()];
        for a in g.arcs() {
            if self.is_inner_arc(g, a) {
                arcs[self.component_of[g.source(a).0]].push(a);
            }
        }
        self.components
            .iter()
            .cloned()
            .zip(arcs)
            .enumerate()
            .map(|(component, (nodes, arcs))| ComponentSubgraph { component, nodes, arcs })
            .collect()
    }

    /// Same partition, ignoring component order.
    pub fn same_partition(&self, other: &SccDecomposition) -> bool {
        let mut a = self.components.clone();
        let mut b = other.components.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// Tarjan's algorithm, iterative, in one pass over the arcs.
pub fn scc_decompose(g: &DirectedGraph) -> SccDecomposition {
    const UNSEEN: usize = usize::MAX;
    let n = g.node_count();
    let mut index = vec![UNSEEN; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<NodeIx> = Vec::new();
    let mut components: Vec<Vec<NodeIx>> = Vec::new();
    let mut counter = 0usize;
    // (node, position in its out-arc list)
    let mut call: Vec<(NodeIx, usize)> = Vec::new();

    for root in g.nodes() {
        if index[root.0] != UNSEEN {
            continue;
        }
        index[root.0] = counter;
        lowlink[root.0] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root.0] = true;
        call.push((root, 0));

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let out = g.out_arcs(v);
            if *pos < out.len() {
                let w = g.target(out[*pos]);
                *pos += 1;
                if index[w.0] == UNSEEN {
                    index[w.0] = counter;
                    lowlink[w.0] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w.0] = true;
                    call.push((w, 0));
                } else if on_stack[w.0] {
                    lowlink[v.0] = lowlink[v.0].min(index[w.0]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                lowlink[parent.0] = lowlink[parent.0].min(lowlink[v.0]);
            }
            if lowlink[v.0] == index[v.0] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("v is on the stack");
                    on_stack[w.0] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort();
                components.push(comp);
            }
        }
    }

    let mut component_of = vec![0usize; n];
    for (i, comp) in components.iter().enumerate() {
        for x in comp {
            component_of[x.0] = i;
        }
    }
    let condensation = condensation_graph(g, components.len(), &component_of);
    SccDecomposition {
        components,
        component_of,
        condensation,
    }
}

fn condensation_graph(g: &DirectedGraph, count: usize, component_of: &[usize]) -> DirectedGraph {
    let mut builder = GraphBuilder::new();
    for i in 0..count {
        builder.add_node(i.to_string()).expect("distinct indices");
    }
    let mut seen = std::collections::HashSet::new();
    for a in g.arcs() {
        let (s, t) = (component_of[g.source(a).0], component_of[g.target(a).0]);
        if s != t && seen.insert((s, t)) {
            builder
                .add_arc(format!("{s}->{t}"), NodeIx(s), NodeIx(t))
                .expect("deduplicated");
        }
    }
    builder.build()
}

/// Exactly one strongly connected component.
pub fn is_strongly_connected(g: &DirectedGraph) -> Result<bool, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    Ok(scc_decompose(g).len() == 1)
}

/// Weakly connected components: labels per node and the component count.
pub fn weak_components(g: &DirectedGraph) -> (Vec<usize>, usize) {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in g.arcs() {
        let (s, t) = (find(&mut parent, g.source(a).0), find(&mut parent, g.target(a).0));
        if s != t {
            parent[s.max(t)] = s.min(t);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut labels = vec![0usize; n];
    let mut count = 0;
    for (x, l) in labels.iter_mut().enumerate() {
        let r = find(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        *l = label[r];
    }
    (labels, count)
}

/// The underlying undirected graph is connected.
pub fn is_connected(g: &DirectedGraph) -> Result<bool, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    Ok(weak_components(g).1 == 1)
}

/// No closed walk of positive length: every component is a singleton without a loop.
pub fn is_acyclic(g: &DirectedGraph) -> bool {
    if g.arcs().any(|a| g.is_loop(a)) {
        return false;
    }
    scc_decompose(g).components.iter().all(|c| c.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_c2() -> DirectedGraph {
        DirectedGraph::from_index_pairs(4, &[(0, 1), (1, 0), (2, 3), (3, 2)])
    }

    #[test]
    fn decompose_examples() {
        let c3 = scc_decompose(&DirectedGraph::standard_cycle(3));
        assert_eq!(c3.components, vec![vec![NodeIx(0), NodeIx(1), NodeIx(2)]]);
        assert_eq!(c3.condensation.arc_count(), 0);

        let p3 = scc_decompose(&DirectedGraph::standard_path(3));
        assert_eq!(p3.len(), 3);
        // reverse topological: the sink comes first
        assert_eq!(p3.components[0], vec![NodeIx(2)]);
        assert_eq!(p3.condensation.node_count(), 3);
        assert_eq!(p3.condensation.arc_count(), 2);
        assert!(is_acyclic(&p3.condensation));

        assert_eq!(scc_decompose(&two_c2()).len(), 2);
    }

    #[test]
    fn condensation_deduplicates_parallel_arcs() {
        let g = DirectedGraph::from_index_pairs(2, &[(0, 1), (0, 1)]);
        let d = scc_decompose(&g);
        assert_eq!(d.condensation.arc_count(), 1);
    }

    #[test]
    fn connectivity_predicates() {
        assert_eq!(is_strongly_connected(&DirectedGraph::standard_cycle(5)), Ok(true));
        assert_eq!(is_strongly_connected(&DirectedGraph::standard_path(2)), Ok(false));
        assert_eq!(is_strongly_connected(&DirectedGraph::standard_cycle(0)), Ok(true));
        assert_eq!(is_strongly_connected(&DirectedGraph::empty()), Err(GraphError::EmptyGraph));

        assert_eq!(is_connected(&DirectedGraph::standard_path(4)), Ok(true));
        assert_eq!(is_connected(&DirectedGraph::from_index_pairs(2, &[])), Ok(false));
        assert_eq!(is_connected(&DirectedGraph::standard_cycle(3)), Ok(true));
        assert_eq!(is_connected(&DirectedGraph::empty()), Err(GraphError::EmptyGraph));

        assert!(is_acyclic(&DirectedGraph::standard_path(5)));
        assert!(!is_acyclic(&DirectedGraph::standard_cycle(1)));
        assert!(is_acyclic(&DirectedGraph::empty()));
    }

    #[test]
    fn subgraphs_mark_trivial_components() {
        let g = DirectedGraph::from_index_pairs(3, &[(0, 1), (1, 0), (1, 2)]);
        let d = scc_decompose(&g);
        let subs = d.subgraphs(&g);
        let trivial: Vec<_> = subs.iter().filter(|s| s.is_trivial()).collect();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].nodes, vec![NodeIx(2)]);
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let g = DirectedGraph::standard_path(200_000);
        assert_eq!(scc_decompose(&g).len(), 200_000);
    }
}
