//! Pushout constructions: identifying nodes, attaching cycles, gluing parallel paths.
//!
//! Each operation returns the new graph and the quotient (or inclusion)
//! morphism from the input graph. Arcs keep their ids; a merged node or arc
//! takes the lexicographically smallest id of its class and sits at the
//! position of the first member in the input order.

use crate::graph::{fresh_id, ArcIx, GraphBuilder, NodeIx, SharedGraph};
use crate::morphism::GraphMorphism;
use crate::walk::Walk;

use super::HomotopyError;

#[derive(Clone, Debug)]
pub struct Surgery {
    pub graph: SharedGraph,
    /// From the input graph to [`Surgery::graph`].
    pub morphism: GraphMorphism,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Quotient of `g` by node and arc identifications. Identified arcs must have
/// identified endpoints.
fn quotient(g: &SharedGraph, mut nodes: UnionFind, mut arcs: UnionFind) -> Surgery {
    let mut node_class = vec![usize::MAX; g.node_count()];
    let mut class_name: Vec<String> = Vec::new();
    let mut node_map = Vec::with_capacity(g.node_count());
    for x in g.nodes() {
        let r = nodes.find(x.0);
        if node_class[r] == usize::MAX {
            node_class[r] = class_name.len();
            class_name.push(g.node_id(x).to_owned());
        } else if g.node_id(x) < class_name[node_class[r]].as_str() {
            class_name[node_class[r]] = g.node_id(x).to_owned();
        }
        node_map.push(NodeIx(node_class[r]));
    }

    let mut arc_class = vec![usize::MAX; g.arc_count()];
    let mut arc_name: Vec<String> = Vec::new();
    let mut arc_ends: Vec<(NodeIx, NodeIx)> = Vec::new();
    let mut arc_map = Vec::with_capacity(g.arc_count());
    for a in g.arcs() {
        let r = arcs.find(a.0);
        let ends = (node_map[g.source(a).0], node_map[g.target(a).0]);
        if arc_class[r] == usize::MAX {
            arc_class[r] = arc_name.len();
            arc_name.push(g.arc_id(a).to_owned());
            arc_ends.push(ends);
        } else {
            debug_assert_eq!(arc_ends[arc_class[r]], ends, "identified arcs need identified endpoints");
            if g.arc_id(a) < arc_name[arc_class[r]].as_str() {
                arc_name[arc_class[r]] = g.arc_id(a).to_owned();
            }
        }
        arc_map.push(ArcIx(arc_class[r]));
    }

    let mut builder = GraphBuilder::new();
    for name in class_name {
        builder.add_node(name).expect("class names come from distinct ids");
    }
    for (name, (s, t)) in arc_name.into_iter().zip(arc_ends) {
        builder.add_arc(name, s, t).expect("class names come from distinct ids");
    }
    let graph = builder.build().into_shared();
    let morphism = GraphMorphism::new(g.clone(), graph.clone(), node_map, arc_map).expect("quotient maps are total");
    Surgery { graph, morphism }
}

/// Identifies two distinct nodes.
pub fn glue_nodes(g: &SharedGraph, x: NodeIx, y: NodeIx) -> Result<Surgery, HomotopyError> {
    for v in [x, y] {
        if v.0 >= g.node_count() {
            return Err(crate::graph::GraphError::UnknownNode(v.to_string()).into());
        }
    }
    if x == y {
        return Err(HomotopyError::SameNode);
    }
    let mut nodes = UnionFind::new(g.node_count());
    nodes.union(x.0, y.0);
    Ok(quotient(g, nodes, UnionFind::new(g.arc_count())))
}

/// Attaches a fresh cycle of length `m` at `x`. The hub keeps the id of `x`;
/// new nodes and arcs get fresh ids derived from `x`.
pub fn attach_cycle(g: &SharedGraph, x: NodeIx, m: usize) -> Result<Surgery, HomotopyError> {
    if x.0 >= g.node_count() {
        return Err(crate::graph::GraphError::UnknownNode(x.to_string()).into());
    }
    if m == 0 {
        return Err(HomotopyError::ZeroLength);
    }
    let hub = g.node_id(x);
    let node_ids: Vec<String> = (1..m)
        .map(|i| fresh_id(&format!("{hub}.c{i}"), |s| g.contains_node_id(s)))
        .collect();
    let arc_ids: Vec<String> = (0..m)
        .map(|i| fresh_id(&format!("{hub}.b{i}"), |s| g.contains_arc_id(s)))
        .collect();
    attach_labeled_cycle(g, x, &node_ids, &arc_ids)
}

/// Attaches a cycle `x → n_1 → … → n_{m-1} → x` with caller-chosen ids.
///
/// `arc_ids` has `m` entries and `node_ids` the `m - 1` new interior nodes.
pub fn attach_labeled_cycle(
    g: &SharedGraph,
    x: NodeIx,
    node_ids: &[String],
    arc_ids: &[String],
) -> Result<Surgery, HomotopyError> {
    if x.0 >= g.node_count() {
        return Err(crate::graph::GraphError::UnknownNode(x.to_string()).into());
    }
    let m = arc_ids.len();
    if m == 0 {
        return Err(HomotopyError::ZeroLength);
    }
    if node_ids.len() + 1 != m {
        return Err(HomotopyError::LengthMismatch(node_ids.len() + 1, m));
    }
    let mut builder = g.to_builder();
    let mut ring = vec![x];
    for id in node_ids {
        ring.push(builder.add_node(id.clone())?);
    }
    for (i, id) in arc_ids.iter().enumerate() {
        builder.add_arc(id.clone(), ring[i], ring[(i + 1) % m])?;
    }
    let graph = builder.build().into_shared();
    let morphism = GraphMorphism::new(g.clone(), graph.clone(), g.nodes().collect(), g.arcs().collect())
        .expect("inclusion is total");
    Ok(Surgery { graph, morphism })
}

/// Identifies two arc-disjoint simple walks with common endpoints and equal
/// length, arc by arc and node by node.
pub fn glue_paths(g: &SharedGraph, p1: &Walk, p2: &Walk) -> Result<Surgery, HomotopyError> {
    if p1.len() != p2.len() {
        return Err(HomotopyError::LengthMismatch(p1.len(), p2.len()));
    }
    if p1.start() != p2.start() || p1.end() != p2.end() {
        return Err(HomotopyError::EndpointMismatch);
    }
    if !p1.is_simple(g) || !p2.is_simple(g) || p1.arcs().iter().any(|a| p2.arcs().contains(a)) {
        return Err(HomotopyError::NotSimple);
    }
    let mut nodes = UnionFind::new(g.node_count());
    for (u, v) in p1.node_sequence(g).into_iter().zip(p2.node_sequence(g)) {
        nodes.union(u.0, v.0);
    }
    let mut arcs = UnionFind::new(g.arc_count());
    for (&a, &b) in p1.arcs().iter().zip(p2.arcs()) {
        arcs.union(a.0, b.0);
    }
    Ok(quotient(g, nodes, arcs))
}
