//! Chains, boundary operators and homology in degrees 0 and 1.
//!
//! A 1-chain is stored through its image in the free abelian group on the
//! arcs ([`ArcChain`]); a 0-chain lives in the free abelian group on the nodes
//! ([`NodeChain`]). The boundary sends an arc to `target − source`, and the
//! augmentation sends every node to 1, so `boundary_0 ∘ boundary_1 = 0`.
//! `H_1` is the kernel of `boundary_1`; `H_0` is the kernel of `boundary_0`
//! modulo the image of `boundary_1`.

mod decompose;
mod flow;
mod postman;

use thiserror::Error;

use crate::graph::{ArcIx, DirectedGraph, GraphError, NodeIx};
use crate::scc::weak_components;

pub use decompose::{concatenate_cycles, decompose_positive_chain, euler_via_homology, CycleDecomposition};
pub use flow::{min_cost_flow, FlowArc, FlowSolution};
pub use postman::{minimal_covering_walk, CoveringWalk};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("coefficient {coefficient} on arc `{arc}` is negative")]
    NegativeCoefficient { arc: String, coefficient: i64 },
    #[error("chain has nonzero boundary")]
    NonzeroBoundary,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has no arcs")]
    NoArcs,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("cycles do not share nodes and cannot be concatenated")]
    DisjointCycles,
    #[error("chain belongs to a graph with {expected} arcs, got {found} coefficients")]
    WrongSupport { expected: usize, found: usize },
    #[error("min-cost flow is infeasible")]
    InfeasibleFlow,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Integer coefficients on the arcs of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcChain<'g> {
    graph: &'g DirectedGraph,
    coefficients: Vec<i64>,
}

impl<'g> ArcChain<'g> {
    pub fn zero(graph: &'g DirectedGraph) -> Self {
        Self {
            graph,
            coefficients: vec![0; graph.arc_count()],
        }
    }

    pub fn new(graph: &'g DirectedGraph, coefficients: Vec<i64>) -> Result<Self, HomologyError> {
        if coefficients.len() != graph.arc_count() {
            return Err(HomologyError::WrongSupport {
                expected: graph.arc_count(),
                found: coefficients.len(),
            });
        }
        Ok(Self { graph, coefficients })
    }

    /// From `(arc id, coefficient)` pairs; unlisted arcs get 0, repeated ids add up.
    pub fn from_ids<'a>(
        graph: &'g DirectedGraph,
        pairs: impl IntoIterator<Item = (&'a str, i64)>,
    ) -> Result<Self, HomologyError> {
        let mut chain = Self::zero(graph);
        for (id, c) in pairs {
            chain.coefficients[graph.arc(id)?.0] += c;
        }
        Ok(chain)
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, a: ArcIx) -> i64 {
        self.coefficients[a.0]
    }

    pub(crate) fn coefficients_mut(&mut self) -> &mut [i64] {
        &mut self.coefficients
    }

    pub fn is_positive(&self) -> bool {
        self.coefficients.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &ArcChain<'g>) -> ArcChain<'g> {
        ArcChain {
            graph: self.graph,
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect(),
        }
    }

    /// `Σ |coefficient|`.
    pub fn length(&self) -> u64 {
        self.coefficients.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn boundary(&self) -> NodeChain<'g> {
        boundary_1(self)
    }
}

/// Integer coefficients on the nodes of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeChain<'g> {
    graph: &'g DirectedGraph,
    coefficients: Vec<i64>,
}

impl<'g> NodeChain<'g> {
    pub fn zero(graph: &'g DirectedGraph) -> Self {
        Self {
            graph,
            coefficients: vec![0; graph.node_count()],
        }
    }

    pub fn from_ids<'a>(
        graph: &'g DirectedGraph,
        pairs: impl IntoIterator<Item = (&'a str, i64)>,
    ) -> Result<Self, HomologyError> {
        let mut chain = Self::zero(graph);
        for (id, c) in pairs {
            chain.coefficients[graph.node(id)?.0] += c;
        }
        Ok(chain)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, x: NodeIx) -> i64 {
        self.coefficients[x.0]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }
}

/// Linear extension of `a ↦ target(a) − source(a)`.
pub fn boundary_1<'g>(u: &ArcChain<'g>) -> NodeChain<'g> {
    let g = u.graph;
    let mut out = NodeChain::zero(g);
    for a in g.arcs() {
        let c = u.coefficients[a.0];
        out.coefficients[g.target(a).0] += c;
        out.coefficients[g.source(a).0] -= c;
    }
    out
}

/// The augmentation: sum of coefficients.
pub fn boundary_0(v: &NodeChain<'_>) -> i64 {
    v.coefficients.iter().sum()
}

/// Coefficient 1 on every arc.
pub fn fundamental_chain(g: &DirectedGraph) -> ArcChain<'_> {
    ArcChain {
        graph: g,
        coefficients: vec![1; g.arc_count()],
    }
}

pub fn length(u: &ArcChain<'_>) -> u64 {
    u.length()
}

/// Node-by-arc matrix of `boundary_1`: column `a` has `+1` at `target(a)` and
/// `−1` at `source(a)` (a loop gives a zero column).
pub fn incidence_matrix(g: &DirectedGraph) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; g.arc_count()]; g.node_count()];
    for a in g.arcs() {
        m[g.target(a).0][a.0] += 1;
        m[g.source(a).0][a.0] -= 1;
    }
    m
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let height = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..width {
        let Some(pivot) = (rank..height).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..height {
            for c in col + 1..width {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == height {
            break;
        }
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary<'g> {
    pub h0_rank: usize,
    pub h1_rank: usize,
    /// Fundamental cycles of a spanning forest of the underlying undirected graph.
    pub h1_basis: Vec<ArcChain<'g>>,
    /// Number of weakly connected components.
    pub component_count: usize,
}

/// Ranks from integer elimination of the incidence matrix, basis from a spanning forest.
pub fn homology_summary(g: &DirectedGraph) -> HomologySummary<'_> {
    let rank_d1 = integer_rank(&incidence_matrix(g));
    let (_, component_count) = weak_components(g);
    // ker(boundary_0) has rank |V| - 1 on a nonempty graph, 0 on the empty one
    let ker_d0 = g.node_count().saturating_sub(1);
    HomologySummary {
        h0_rank: ker_d0 - rank_d1.min(ker_d0),
        h1_rank: g.arc_count() - rank_d1,
        h1_basis: cycle_basis(g),
        component_count,
    }
}

/// One signed chain per non-forest arc: the arc plus the forest path from its
/// target back to its source.
pub fn cycle_basis(g: &DirectedGraph) -> Vec<ArcChain<'_>> {
    let n = g.node_count();
    // parent arc and direction (+1 if the parent arc points toward the child)
    let mut parent: Vec<Option<(ArcIx, i64)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree_arc = vec![false; g.arc_count()];
    for root in g.nodes() {
        if depth[root.0] != usize::MAX {
            continue;
        }
        depth[root.0] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let neighbours = g
                .out_arcs(x)
                .iter()
                .map(|&a| (a, g.target(a), 1))
                .chain(g.in_arcs(x).iter().map(|&a| (a, g.source(a), -1)));
            for (a, y, dir) in neighbours {
                if depth[y.0] == usize::MAX {
                    depth[y.0] = depth[x.0] + 1;
                    parent[y.0] = Some((a, dir));
                    tree_arc[a.0] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut basis = Vec::new();
    for a in g.arcs().filter(|a| !tree_arc[a.0]) {
        let mut chain = ArcChain::zero(g);
        chain.coefficients[a.0] += 1;
        // walk target back up to the common ancestor, and source likewise
        let (mut u, mut v) = (g.target(a), g.source(a));
        while u != v {
            if depth[u.0] >= depth[v.0] {
                let (p, dir) = parent[u.0].expect("non-root has a parent");
                // climbing from u runs against the arc when it points to u
                chain.coefficients[p.0] -= dir;
                u = if dir == 1 { g.source(p) } else { g.target(p) };
            } else {
                let (p, dir) = parent[v.0].expect("non-root has a parent");
                chain.coefficients[p.0] += dir;
                v = if dir == 1 { g.source(p) } else { g.target(p) };
            }
        }
        basis.push(chain);
    }
    basis
}

/// Nonzero kernel vectors with every coefficient in `0..=max_coeff`, in
/// lexicographic order of coefficient vectors, at most `limit` of them.
pub fn positive_cycle_vectors(g: &DirectedGraph, max_coeff: i64, limit: usize) -> Vec<ArcChain<'_>> {
    let m = g.arc_count();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; m];
    let mut balance = vec![0i64; g.node_count()];
    fn rec<'g>(
        g: &'g DirectedGraph,
        k: usize,
        max_coeff: i64,
        limit: usize,
        coeffs: &mut Vec<i64>,
        balance: &mut Vec<i64>,
        out: &mut Vec<ArcChain<'g>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == g.arc_count() {
            if balance.iter().all(|&b| b == 0) && coeffs.iter().any(|&c| c != 0) {
                out.push(ArcChain {
                    graph: g,
                    coefficients: coeffs.clone(),
                });
            }
            return;
        }
        let a = ArcIx(k);
        for c in 0..=max_coeff {
            coeffs[k] = c;
            balance[g.target(a).0] += c;
            balance[g.source(a).0] -= c;
            rec(g, k + 1, max_coeff, limit, coeffs, balance, out);
            balance[g.target(a).0] -= c;
            balance[g.source(a).0] += c;
        }
        coeffs[k] = 0;
    }
    if m > 0 {
        rec(g, 0, max_coeff, limit, &mut coeffs, &mut balance, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_examples() {
        let g = DirectedGraph::build(["x", "y"], [("a", "x", "y")]).unwrap();
        let u = ArcChain::from_ids(&g, [("a", 1)]).unwrap();
        assert_eq!(u.boundary(), NodeChain::from_ids(&g, [("y", 1), ("x", -1)]).unwrap());

        let c1 = DirectedGraph::standard_cycle(1);
        assert!(ArcChain::from_ids(&c1, [("a0", 5)]).unwrap().boundary().is_zero());

        let c3 = DirectedGraph::standard_cycle(3);
        assert!(fundamental_chain(&c3).boundary().is_zero());
    }

    #[test]
    fn augmentation_examples() {
        let g = DirectedGraph::standard_path(3);
        assert_eq!(boundary_0(&NodeChain::from_ids(&g, [("x0", 1)]).unwrap()), 1);
        assert_eq!(boundary_0(&NodeChain::zero(&g)), 0);
        let u = ArcChain::new(&g, vec![3, -7]).unwrap();
        assert_eq!(boundary_0(&boundary_1(&u)), 0);
    }

    #[test]
    fn fundamental_chain_examples() {
        let c3 = DirectedGraph::standard_cycle(3);
        assert_eq!(fundamental_chain(&c3).coefficients(), &[1, 1, 1]);
        assert!(fundamental_chain(&DirectedGraph::empty()).is_zero());

        let g = DirectedGraph::build(["x", "y"], [("a", "x", "y"), ("b", "x", "y"), ("c", "y", "x")]).unwrap();
        let d = fundamental_chain(&g).boundary();
        assert_eq!(d, NodeChain::from_ids(&g, [("y", 1), ("x", -1)]).unwrap());
    }

    #[test]
    fn length_examples() {
        let c3 = DirectedGraph::standard_cycle(3);
        assert_eq!(length(&fundamental_chain(&c3)), 3);
        assert_eq!(length(&ArcChain::zero(&c3)), 0);
        assert_eq!(length(&ArcChain::new(&c3, vec![0, -2, 0]).unwrap()), 2);
    }

    #[test]
    fn summary_examples() {
        for n in 1..6 {
            let g = DirectedGraph::standard_cycle(n);
            let s = homology_summary(&g);
            assert_eq!((s.h0_rank, s.h1_rank), (0, 1));
        }
        let p4 = DirectedGraph::standard_path(4);
        let s = homology_summary(&p4);
        assert_eq!((s.h0_rank, s.h1_rank), (0, 0));
        let two = DirectedGraph::from_index_pairs(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        let s = homology_summary(&two);
        assert_eq!((s.h0_rank, s.h1_rank, s.component_count), (1, 2, 2));
        let empty = DirectedGraph::empty();
        let s = homology_summary(&empty);
        assert_eq!((s.h0_rank, s.h1_rank, s.component_count), (0, 0, 0));
    }

    #[test]
    fn basis_chains_are_cycles() {
        let g = DirectedGraph::from_index_pairs(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 2), (2, 2), (1, 0)]);
        let s = homology_summary(&g);
        assert_eq!(s.h1_basis.len(), s.h1_rank);
        for chain in &s.h1_basis {
            assert!(chain.boundary().is_zero());
        }
        // basis vectors are independent
        let rows: Vec<Vec<i64>> = s.h1_basis.iter().map(|c| c.coefficients().to_vec()).collect();
        assert_eq!(integer_rank(&rows), s.h1_rank);
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(integer_rank(&[]), 0);
        assert_eq!(integer_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]), 3);
        assert_eq!(integer_rank(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    }

    #[test]
    fn positive_vectors_of_figure_eight() {
        let g = DirectedGraph::from_index_pairs(3, &[(0, 1), (1, 0), (0, 2), (2, 0)]);
        let v = positive_cycle_vectors(&g, 1, usize::MAX);
        let coeffs: Vec<&[i64]> = v.iter().map(|c| c.coefficients()).collect();
        assert_eq!(coeffs, vec![&[0, 0, 1, 1][..], &[1, 1, 0, 0], &[1, 1, 1, 1]]);
    }

    #[test]
    fn wrong_support_rejected() {
        let c3 = DirectedGraph::standard_cycle(3);
        assert_eq!(
            ArcChain::new(&c3, vec![1]),
            Err(HomologyError::WrongSupport { expected: 3, found: 1 })
        );
    }
}
