use std::collections::BTreeMap;

use super::{boundary_1, fundamental_chain, ArcChain, HomologyError};
use crate::euler::{balance_violations, EulerReport};
use crate::graph::{ArcIx, DirectedGraph, NodeIx};
use crate::scc::weak_components;
use crate::walk::ClosedWalk;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<ClosedWalk>,
    pub multiplicities: Vec<u64>,
}

impl CycleDecomposition {
    /// Arc coefficients of `Σ multiplicity · cycle`.
    pub fn arc_multiset(&self, g: &DirectedGraph) -> Vec<i64> {
        let mut out = vec![0i64; g.arc_count()];
        for (w, &k) in self.cycles.iter().zip(&self.multiplicities) {
            for a in w.arcs() {
                out[a.0] += k as i64;
            }
        }
        out
    }

    /// Every cycle repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<ClosedWalk> {
        self.cycles
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(w, &k)| std::iter::repeat_n(w.clone(), k as usize))
            .collect()
    }
}

/// Repeated cycle extraction from a positive chain with zero boundary.
///
/// Each round starts at the smallest arc with positive residual and follows
/// the smallest positive out-arc until it is back at the starting node.
/// Identical closed walks are merged into one entry with a multiplicity.
pub fn decompose_positive_chain(u: &ArcChain<'_>) -> Result<CycleDecomposition, HomologyError> {
    let g = u.graph();
    if let Some(a) = g.arcs().find(|&a| u.coefficient(a) < 0) {
        return Err(HomologyError::NegativeCoefficient {
            arc: g.arc_id(a).to_string(),
            coefficient: u.coefficient(a),
        });
    }
    if !boundary_1(u).is_zero() {
        return Err(HomologyError::NonzeroBoundary);
    }

    let mut residual = u.coefficients().to_vec();
    let mut order: Vec<ClosedWalk> = Vec::new();
    let mut counts: BTreeMap<ClosedWalk, u64> = BTreeMap::new();
    while let Some(first) = (0..residual.len()).find(|&k| residual[k] > 0) {
        let start = g.source(ArcIx(first));
        let mut arcs = vec![ArcIx(first)];
        residual[first] -= 1;
        let mut at = g.target(ArcIx(first));
        while at != start {
            let next = *g
                .out_arcs(at)
                .iter()
                .find(|a| residual[a.0] > 0)
                .expect("zero boundary leaves an outgoing arc at every intermediate node");
            residual[next.0] -= 1;
            arcs.push(next);
            at = g.target(next);
        }
        let walk = ClosedWalk::new_unchecked(start, arcs);
        let entry = counts.entry(walk.clone()).or_insert(0);
        if *entry == 0 {
            order.push(walk);
        }
        *entry += 1;
    }
    let multiplicities = order.iter().map(|w| counts[w]).collect();
    Ok(CycleDecomposition {
        cycles: order,
        multiplicities,
    })
}

/// Splices closed walks into one, starting from the first.
///
/// At every step the smallest node id shared between the current walk and a
/// remaining cycle is chosen; the first such cycle is rotated to start there
/// and inserted at the first arrival at that node.
pub fn concatenate_cycles(g: &DirectedGraph, cycles: &[ClosedWalk]) -> Result<ClosedWalk, HomologyError> {
    let Some((head, rest)) = cycles.split_first() else {
        return Err(HomologyError::NoArcs);
    };
    let mut current = head.clone();
    let mut remaining: Vec<&ClosedWalk> = rest.iter().collect();
    while !remaining.is_empty() {
        let visited = current.nodes(g);
        let mut best: Option<(&str, NodeIx, usize)> = None;
        for (k, w) in remaining.iter().enumerate() {
            for x in w.nodes(g) {
                if !visited.contains(&x) {
                    continue;
                }
                let id = g.node_id(x);
                if best.is_none_or(|(b, _, _)| id < b) {
                    best = Some((id, x, k));
                }
            }
        }
        let (_, hub, k) = best.ok_or(HomologyError::DisjointCycles)?;
        let cycle = remaining.remove(k);
        let shift = cycle.nodes(g).iter().position(|&x| x == hub).expect("hub is on the cycle");
        let rotated = cycle.rotated(g, shift);
        let mut arcs = current.arcs().to_vec();
        // first arrival at the hub, the closing return counting for the base
        let at = visited
            .iter()
            .skip(1)
            .position(|&x| x == hub)
            .map_or(current.len(), |i| i + 1);
        arcs.splice(at..at, rotated.arcs().iter().copied());
        let base = if current.is_empty() { hub } else { current.base() };
        current = ClosedWalk::new_unchecked(base, arcs);
    }
    Ok(current)
}

/// Eulerian test through the boundary of the fundamental chain; when it
/// vanishes, the cycle comes from decomposing that chain and splicing.
pub fn euler_via_homology(g: &DirectedGraph) -> Result<EulerReport, HomologyError> {
    if g.arc_count() == 0 {
        return Err(HomologyError::NoArcs);
    }
    if weak_components(g).1 != 1 {
        return Err(HomologyError::NotConnected);
    }
    let chain = fundamental_chain(g);
    if !boundary_1(&chain).is_zero() {
        return Ok(EulerReport {
            is_eulerian: false,
            balance_violations: balance_violations(g),
            connected: true,
            cycle: None,
        });
    }
    let decomposition = decompose_positive_chain(&chain)?;
    let cycle = concatenate_cycles(g, &decomposition.expanded())?;
    Ok(EulerReport {
        is_eulerian: true,
        balance_violations: Vec::new(),
        connected: true,
        cycle: Some(cycle),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_eight() -> DirectedGraph {
        DirectedGraph::build(
            ["h", "p", "q"],
            [("a", "h", "p"), ("b", "p", "h"), ("c", "h", "q"), ("d", "q", "h")],
        )
        .unwrap()
    }

    #[test]
    fn decompose_examples() {
        let c3 = DirectedGraph::standard_cycle(3);
        let d = decompose_positive_chain(&fundamental_chain(&c3)).unwrap();
        assert_eq!(d.cycles.len(), 1);
        assert_eq!(d.cycles[0].len(), 3);

        let g = figure_eight();
        let d = decompose_positive_chain(&fundamental_chain(&g)).unwrap();
        assert_eq!(d.arc_multiset(&g), vec![1, 1, 1, 1]);
        assert_eq!(d.cycles.iter().map(ClosedWalk::len).collect::<Vec<_>>(), vec![2, 2]);

        let c2 = DirectedGraph::standard_cycle(2);
        let u = ArcChain::new(&c2, vec![2, 2]).unwrap();
        let d = decompose_positive_chain(&u).unwrap();
        assert_eq!(d.multiplicities, vec![2]);
        assert_eq!(d.arc_multiset(&c2), vec![2, 2]);
    }

    #[test]
    fn decompose_errors() {
        let c2 = DirectedGraph::standard_cycle(2);
        assert!(matches!(
            decompose_positive_chain(&ArcChain::new(&c2, vec![1, -1]).unwrap()),
            Err(HomologyError::NegativeCoefficient { coefficient: -1, .. })
        ));
        assert_eq!(
            decompose_positive_chain(&ArcChain::new(&c2, vec![1, 0]).unwrap()),
            Err(HomologyError::NonzeroBoundary)
        );
        let empty = decompose_positive_chain(&ArcChain::zero(&c2)).unwrap();
        assert!(empty.cycles.is_empty());
    }

    #[test]
    fn concatenation_is_closed_and_complete() {
        let g = figure_eight();
        let d = decompose_positive_chain(&fundamental_chain(&g)).unwrap();
        let w = concatenate_cycles(&g, &d.expanded()).unwrap();
        assert!(ClosedWalk::new(&g, w.base(), w.arcs().to_vec()).is_ok());
        assert_eq!(w.arc_ids(&g), vec!["a", "b", "c", "d"]);
    }

    #[test]
    fn disjoint_cycles_rejected() {
        let g = DirectedGraph::from_index_pairs(2, &[(0, 0), (1, 1)]);
        let d = decompose_positive_chain(&fundamental_chain(&g)).unwrap();
        assert_eq!(concatenate_cycles(&g, &d.expanded()), Err(HomologyError::DisjointCycles));
    }

    #[test]
    fn euler_via_homology_examples() {
        let r = euler_via_homology(&DirectedGraph::standard_cycle(4)).unwrap();
        assert!(r.is_eulerian);
        assert_eq!(r.cycle.unwrap().len(), 4);

        let r = euler_via_homology(&DirectedGraph::standard_path(3)).unwrap();
        assert!(!r.is_eulerian);
        assert_eq!(r.balance_violations.len(), 2);

        let g = figure_eight();
        let w = euler_via_homology(&g).unwrap().cycle.unwrap();
        let mut ids = w.arc_ids(&g);
        ids.sort();
        assert_eq!(ids, vec!["a", "b", "c", "d"]);
    }

    #[test]
    fn euler_via_homology_errors() {
        assert_eq!(euler_via_homology(&DirectedGraph::standard_cycle(0)), Err(HomologyError::NoArcs));
        let two = DirectedGraph::from_index_pairs(2, &[(0, 0), (1, 1)]);
        assert_eq!(euler_via_homology(&two), Err(HomologyError::NotConnected));
    }
}
