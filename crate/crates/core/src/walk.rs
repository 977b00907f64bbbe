//! Open and closed walks.
//!
//! A closed walk of length `n` with a distinguished base node is the same data
//! as a morphism from the standard cycle `c_n`; [`ClosedWalk::as_morphism`]
//! makes that correspondence explicit.

use crate::graph::{ArcIx, DirectedGraph, GraphError, NodeIx, SharedGraph};
use crate::morphism::GraphMorphism;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedWalk {
    base: NodeIx,
    arcs: Vec<ArcIx>,
}

impl ClosedWalk {
    /// Validates that consecutive arcs chain and the last returns to the first.
    pub fn new(g: &DirectedGraph, base: NodeIx, arcs: Vec<ArcIx>) -> Result<Self, GraphError> {
        if base.0 >= g.node_count() {
            return Err(GraphError::UnknownNode(base.to_string()));
        }
        if let Some(bad) = arcs.iter().find(|a| a.0 >= g.arc_count()) {
            return Err(GraphError::UnknownArc(bad.to_string()));
        }
        let mut at = base;
        for (i, &a) in arcs.iter().enumerate() {
            if g.source(a) != at {
                return Err(GraphError::BrokenWalk { position: i });
            }
            at = g.target(a);
        }
        if at != base {
            return Err(GraphError::BrokenWalk { position: arcs.len() });
        }
        Ok(Self { base, arcs })
    }

    /// Closed walk starting at the source of the first arc.
    pub fn from_arcs(g: &DirectedGraph, arcs: Vec<ArcIx>) -> Result<Self, GraphError> {
        let first = *arcs.first().ok_or(GraphError::EmptyWalk)?;
        if first.0 >= g.arc_count() {
            return Err(GraphError::UnknownArc(first.to_string()));
        }
        Self::new(g, g.source(first), arcs)
    }

    pub(crate) fn new_unchecked(base: NodeIx, arcs: Vec<ArcIx>) -> Self {
        Self { base, arcs }
    }

    pub fn base(&self) -> NodeIx {
        self.base
    }

    pub fn arcs(&self) -> &[ArcIx] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Nodes visited before each step: `source(a_0), …, source(a_{n-1})`, or just the base when empty.
    pub fn nodes(&self, g: &DirectedGraph) -> Vec<NodeIx> {
        if self.arcs.is_empty() {
            return vec![self.base];
        }
        self.arcs.iter().map(|&a| g.source(a)).collect()
    }

    /// The walk started `k` steps later.
    pub fn rotated(&self, g: &DirectedGraph, k: usize) -> Self {
        if self.arcs.is_empty() {
            return self.clone();
        }
        let k = k % self.arcs.len();
        let mut arcs = self.arcs[k..].to_vec();
        arcs.extend_from_slice(&self.arcs[..k]);
        Self {
            base: g.source(arcs[0]),
            arcs,
        }
    }

    /// Image under a morphism whose domain is the walk's graph.
    pub fn image(&self, f: &GraphMorphism) -> Self {
        Self {
            base: f.map_node(self.base),
            arcs: self.arcs.iter().map(|&a| f.map_arc(a)).collect(),
        }
    }

    /// The morphism `c_n → g` sending `x_i ↦ source(a_i)` and the i-th cycle arc to `a_i`.
    pub fn as_morphism(&self, g: &SharedGraph) -> GraphMorphism {
        let cycle = DirectedGraph::standard_cycle(self.len()).into_shared();
        let node_map = self.nodes(g);
        GraphMorphism::new(cycle, g.clone(), node_map, self.arcs.clone())
            .expect("walk maps are total")
    }

    pub fn arc_ids<'g>(&self, g: &'g DirectedGraph) -> Vec<&'g str> {
        self.arcs.iter().map(|&a| g.arc_id(a)).collect()
    }
}

/// An open walk (a path in the sense of consecutive arcs), possibly empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    start: NodeIx,
    end: NodeIx,
    arcs: Vec<ArcIx>,
}

impl Walk {
    pub fn new(g: &DirectedGraph, start: NodeIx, arcs: Vec<ArcIx>) -> Result<Self, GraphError> {
        if start.0 >= g.node_count() {
            return Err(GraphError::UnknownNode(start.to_string()));
        }
        if let Some(bad) = arcs.iter().find(|a| a.0 >= g.arc_count()) {
            return Err(GraphError::UnknownArc(bad.to_string()));
        }
        let mut at = start;
        for (i, &a) in arcs.iter().enumerate() {
            if g.source(a) != at {
                return Err(GraphError::BrokenWalk { position: i });
            }
            at = g.target(a);
        }
        Ok(Self { start, end: at, arcs })
    }

    pub fn from_arcs(g: &DirectedGraph, arcs: Vec<ArcIx>) -> Result<Self, GraphError> {
        let first = *arcs.first().ok_or(GraphError::EmptyWalk)?;
        if first.0 >= g.arc_count() {
            return Err(GraphError::UnknownArc(first.to_string()));
        }
        Self::new(g, g.source(first), arcs)
    }

    /// Resolves a walk from arc ids.
    pub fn from_arc_ids<S: AsRef<str>>(g: &DirectedGraph, ids: &[S]) -> Result<Self, GraphError> {
        let arcs = ids.iter().map(|id| g.arc(id.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Self::from_arcs(g, arcs)
    }

    pub fn start(&self) -> NodeIx {
        self.start
    }

    pub fn end(&self) -> NodeIx {
        self.end
    }

    pub fn arcs(&self) -> &[ArcIx] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// `start, target(a_0), …, target(a_last)`.
    pub fn node_sequence(&self, g: &DirectedGraph) -> Vec<NodeIx> {
        let mut out = Vec::with_capacity(self.arcs.len() + 1);
        out.push(self.start);
        out.extend(self.arcs.iter().map(|&a| g.target(a)));
        out
    }

    /// No node visited twice.
    pub fn is_simple(&self, g: &DirectedGraph) -> bool {
        let mut seen = vec![false; g.node_count()];
        self.node_sequence(g)
            .into_iter()
            .all(|x| !std::mem::replace(&mut seen[x.0], true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_walk_validation() {
        let g = DirectedGraph::standard_cycle(3);
        let w = ClosedWalk::from_arcs(&g, vec![ArcIx(1), ArcIx(2), ArcIx(0)]).unwrap();
        assert_eq!(w.base(), NodeIx(1));
        assert_eq!(w.nodes(&g), vec![NodeIx(1), NodeIx(2), NodeIx(0)]);
        assert_eq!(
            ClosedWalk::from_arcs(&g, vec![ArcIx(0), ArcIx(2)]),
            Err(GraphError::BrokenWalk { position: 1 })
        );
        assert_eq!(
            ClosedWalk::from_arcs(&g, vec![ArcIx(0), ArcIx(1)]),
            Err(GraphError::BrokenWalk { position: 2 })
        );
        let empty = ClosedWalk::new(&g, NodeIx(2), vec![]).unwrap();
        assert_eq!(empty.nodes(&g), vec![NodeIx(2)]);
    }

    #[test]
    fn closed_walk_is_a_cycle_morphism() {
        let g = DirectedGraph::standard_cycle(2).into_shared();
        let w = ClosedWalk::from_arcs(&g, vec![ArcIx(0), ArcIx(1), ArcIx(0), ArcIx(1)]).unwrap();
        let m = w.as_morphism(&g);
        assert!(m.validate());
        assert_eq!(m.domain().node_count(), 4);
        assert!(m.is_surjective_on_arcs());
        assert!(!m.is_injective_on_arcs());
    }

    #[test]
    fn rotation_moves_base() {
        let g = DirectedGraph::standard_cycle(3);
        let w = ClosedWalk::from_arcs(&g, vec![ArcIx(0), ArcIx(1), ArcIx(2)]).unwrap();
        let r = w.rotated(&g, 2);
        assert_eq!(r.arcs(), &[ArcIx(2), ArcIx(0), ArcIx(1)]);
        assert_eq!(r.base(), NodeIx(2));
    }

    #[test]
    fn open_walks() {
        let g = DirectedGraph::standard_path(4);
        let w = Walk::from_arc_ids(&g, &["a0", "a1"]).unwrap();
        assert_eq!((w.start(), w.end()), (NodeIx(0), NodeIx(2)));
        assert!(w.is_simple(&g));
        let empty = Walk::new(&g, NodeIx(3), vec![]).unwrap();
        assert_eq!(empty.start(), empty.end());

        let c2 = DirectedGraph::standard_cycle(2);
        let around = Walk::from_arc_ids(&c2, &["a0", "a1"]).unwrap();
        assert!(!around.is_simple(&c2));
    }
}
