//! Finite directed multigraphs with explicit arc identities.
//!
//! A [`DirectedGraph`] is a set of nodes together with a set of arcs, each arc
//! carrying its own identity plus a source and a target node. Parallel arcs and
//! self-loops are allowed. External identifiers are strings; internally every
//! node and arc is addressed by a dense index ([`NodeIx`], [`ArcIx`]) assigned
//! in insertion order, so iteration order is always reproducible.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Dense index of a node inside one [`DirectedGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIx(pub usize);

/// Dense index of an arc inside one [`DirectedGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcIx(pub usize);

impl fmt::Display for NodeIx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ArcIx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Graphs are immutable once built, so morphisms and reports share them.
pub type SharedGraph = Arc<DirectedGraph>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("duplicate arc id `{0}`")]
    DuplicateArc(String),
    #[error("arc `{arc}` references unknown node `{node}`")]
    DanglingEndpoint { arc: String, node: String },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown arc `{0}`")]
    UnknownArc(String),
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("map is not total: {0}")]
    PartialMap(String),
    #[error("arcs do not chain at position {position}")]
    BrokenWalk { position: usize },
    #[error("an arcless walk needs an explicit base node")]
    EmptyWalk,
    #[error("morphisms are not composable: codomain differs from domain")]
    NotComposable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcRecord {
    pub id: String,
    pub src: NodeIx,
    pub tgt: NodeIx,
}

#[derive(Clone, Debug)]
pub struct DirectedGraph {
    nodes: Vec<String>,
    arcs: Vec<ArcRecord>,
    node_lookup: HashMap<String, NodeIx>,
    arc_lookup: HashMap<String, ArcIx>,
    out_arcs: Vec<Vec<ArcIx>>,
    in_arcs: Vec<Vec<ArcIx>>,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.arcs == other.arcs
    }
}

impl Eq for DirectedGraph {}

impl DirectedGraph {
    /// Validates and builds a graph from node ids and `(arc id, source, target)` triples.
    pub fn build<N, A, S1, S2, S3>(nodes: N, arcs: A) -> Result<Self, GraphError>
    where
        N: IntoIterator<Item = S1>,
        S1: Into<String>,
        A: IntoIterator<Item = (S2, S3, S3)>,
        S2: Into<String>,
        S3: AsRef<str>,
    {
        let mut builder = GraphBuilder::new();
        for node in nodes {
            builder.add_node(node)?;
        }
        for (id, src, tgt) in arcs {
            let id = id.into();
            let src_ix = builder.node_ix(src.as_ref()).ok_or_else(|| GraphError::DanglingEndpoint {
                arc: id.clone(),
                node: src.as_ref().to_owned(),
            })?;
            let tgt_ix = builder.node_ix(tgt.as_ref()).ok_or_else(|| GraphError::DanglingEndpoint {
                arc: id.clone(),
                node: tgt.as_ref().to_owned(),
            })?;
            builder.add_arc(id, src_ix, tgt_ix)?;
        }
        Ok(builder.build())
    }

    /// Graph on `node_count` nodes named `x0, x1, …` with arcs `a0, a1, …` given by index pairs.
    ///
    /// Panics if an endpoint is out of range.
    pub fn from_index_pairs(node_count: usize, arcs: &[(usize, usize)]) -> Self {
        let mut builder = GraphBuilder::new();
        for i in 0..node_count {
            builder.add_node(format!("x{i}")).expect("fresh node names");
        }
        for (k, &(s, t)) in arcs.iter().enumerate() {
            assert!(s < node_count && t < node_count, "arc endpoint out of range");
            builder
                .add_arc(format!("a{k}"), NodeIx(s), NodeIx(t))
                .expect("fresh arc names");
        }
        builder.build()
    }

    /// The initial object: no nodes, no arcs.
    pub fn empty() -> Self {
        GraphBuilder::new().build()
    }

    /// The directed cycle of length `n`: nodes `x0 … x(n-1)`, arcs `ai: xi → x(i+1 mod n)`.
    ///
    /// `n = 0` gives the dot graph (one node, no arcs) and `n = 1` a single self-loop.
    pub fn standard_cycle(n: usize) -> Self {
        if n == 0 {
            return Self::from_index_pairs(1, &[]);
        }
        let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_index_pairs(n, &arcs)
    }

    /// The directed path with `n` nodes and `n - 1` arcs `xi → x(i+1)`. Panics when `n = 0`.
    pub fn standard_path(n: usize) -> Self {
        assert!(n >= 1, "a path has at least one node");
        let arcs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Self::from_index_pairs(n, &arcs)
    }

    /// A cycle whose nodes and arcs carry the given ids; `arcs[i]` runs from
    /// `nodes[i]` to `nodes[i + 1 mod n]`.
    pub fn labeled_cycle(nodes: &[String], arcs: &[String]) -> Result<Self, GraphError> {
        if nodes.len() != arcs.len() || nodes.is_empty() {
            return Err(GraphError::PartialMap(format!(
                "a labeled cycle needs as many arcs as nodes (got {} nodes, {} arcs)",
                nodes.len(),
                arcs.len()
            )));
        }
        let mut builder = GraphBuilder::new();
        for node in nodes {
            builder.add_node(node.clone())?;
        }
        let n = nodes.len();
        for (i, arc) in arcs.iter().enumerate() {
            builder.add_arc(arc.clone(), NodeIx(i), NodeIx((i + 1) % n))?;
        }
        Ok(builder.build())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeIx> + '_ {
        (0..self.nodes.len()).map(NodeIx)
    }

    pub fn arcs(&self) -> impl ExactSizeIterator<Item = ArcIx> + '_ {
        (0..self.arcs.len()).map(ArcIx)
    }

    pub fn arc_records(&self) -> &[ArcRecord] {
        &self.arcs
    }

    pub fn node_ids(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_id(&self, x: NodeIx) -> &str {
        &self.nodes[x.0]
    }

    pub fn arc_id(&self, a: ArcIx) -> &str {
        &self.arcs[a.0].id
    }

    pub fn source(&self, a: ArcIx) -> NodeIx {
        self.arcs[a.0].src
    }

    pub fn target(&self, a: ArcIx) -> NodeIx {
        self.arcs[a.0].tgt
    }

    pub fn is_loop(&self, a: ArcIx) -> bool {
        self.source(a) == self.target(a)
    }

    /// Looks up a node by id.
    pub fn node(&self, id: &str) -> Result<NodeIx, GraphError> {
        self.node_lookup
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownNode(id.to_owned()))
    }

    /// Looks up an arc by id.
    pub fn arc(&self, id: &str) -> Result<ArcIx, GraphError> {
        self.arc_lookup
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownArc(id.to_owned()))
    }

    pub fn contains_node_id(&self, id: &str) -> bool {
        self.node_lookup.contains_key(id)
    }

    pub fn contains_arc_id(&self, id: &str) -> bool {
        self.arc_lookup.contains_key(id)
    }

    /// Outgoing arcs of `x`, in arc insertion order.
    pub fn out_arcs(&self, x: NodeIx) -> &[ArcIx] {
        &self.out_arcs[x.0]
    }

    /// Incoming arcs of `x`, in arc insertion order.
    pub fn in_arcs(&self, x: NodeIx) -> &[ArcIx] {
        &self.in_arcs[x.0]
    }

    pub fn in_degree(&self, x: NodeIx) -> usize {
        self.in_arcs[x.0].len()
    }

    pub fn out_degree(&self, x: NodeIx) -> usize {
        self.out_arcs[x.0].len()
    }

    /// `(in_degree, out_degree)` of the node with the given id. A self-loop counts once in each.
    pub fn degrees(&self, id: &str) -> Result<(usize, usize), GraphError> {
        let x = self.node(id)?;
        Ok((self.in_degree(x), self.out_degree(x)))
    }

    /// Nodes with neither incoming nor outgoing arcs.
    pub fn isolated_nodes(&self) -> Vec<NodeIx> {
        self.nodes()
            .filter(|&x| self.in_degree(x) == 0 && self.out_degree(x) == 0)
            .collect()
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.node_count();
        let mut entries = vec![0u64; n * n];
        for arc in &self.arcs {
            entries[arc.src.0 * n + arc.tgt.0] += 1;
        }
        AdjacencyMatrix { order: n, entries }
    }

    /// Subgraph on all nodes keeping only the arcs selected by `keep`. Ids are preserved.
    pub fn arc_subgraph(&self, mut keep: impl FnMut(ArcIx) -> bool) -> Self {
        let mut builder = GraphBuilder::new();
        for id in &self.nodes {
            builder.add_node(id.clone()).expect("ids already unique");
        }
        for a in self.arcs() {
            if keep(a) {
                let rec = &self.arcs[a.0];
                builder
                    .add_arc(rec.id.clone(), rec.src, rec.tgt)
                    .expect("ids already unique");
            }
        }
        builder.build()
    }

    /// Subgraph induced by `nodes` (in the given order): arcs with both endpoints inside.
    pub fn induced_subgraph(&self, nodes: &[NodeIx]) -> Self {
        let mut local = vec![None; self.node_count()];
        let mut builder = GraphBuilder::new();
        for (i, &x) in nodes.iter().enumerate() {
            local[x.0] = Some(NodeIx(i));
            builder.add_node(self.nodes[x.0].clone()).expect("ids already unique");
        }
        for rec in &self.arcs {
            if let (Some(s), Some(t)) = (local[rec.src.0], local[rec.tgt.0]) {
                builder.add_arc(rec.id.clone(), s, t).expect("ids already unique");
            }
        }
        builder.build()
    }

    /// Returns a builder pre-populated with this graph's nodes and arcs.
    pub fn to_builder(&self) -> GraphBuilder {
        let mut builder = GraphBuilder::new();
        for id in &self.nodes {
            builder.add_node(id.clone()).expect("ids already unique");
        }
        for rec in &self.arcs {
            builder
                .add_arc(rec.id.clone(), rec.src, rec.tgt)
                .expect("ids already unique");
        }
        builder
    }

    pub fn into_shared(self) -> SharedGraph {
        Arc::new(self)
    }
}

/// Incremental construction of a [`DirectedGraph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    nodes: Vec<String>,
    arcs: Vec<ArcRecord>,
    node_lookup: HashMap<String, NodeIx>,
    arc_lookup: HashMap<String, ArcIx>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: impl Into<String>) -> Result<NodeIx, GraphError> {
        let id = id.into();
        if self.node_lookup.contains_key(&id) {
            return Err(GraphError::DuplicateNode(id));
        }
        let ix = NodeIx(self.nodes.len());
        self.node_lookup.insert(id.clone(), ix);
        self.nodes.push(id);
        Ok(ix)
    }

    /// Returns the node with this id, adding it if absent.
    pub fn ensure_node(&mut self, id: &str) -> NodeIx {
        match self.node_lookup.get(id) {
            Some(&ix) => ix,
            None => self.add_node(id).expect("checked absent"),
        }
    }

    pub fn add_arc(&mut self, id: impl Into<String>, src: NodeIx, tgt: NodeIx) -> Result<ArcIx, GraphError> {
        let id = id.into();
        for end in [src, tgt] {
            if end.0 >= self.nodes.len() {
                return Err(GraphError::DanglingEndpoint {
                    arc: id,
                    node: end.to_string(),
                });
            }
        }
        if self.arc_lookup.contains_key(&id) {
            return Err(GraphError::DuplicateArc(id));
        }
        let ix = ArcIx(self.arcs.len());
        self.arc_lookup.insert(id.clone(), ix);
        self.arcs.push(ArcRecord { id, src, tgt });
        Ok(ix)
    }

    pub fn node_ix(&self, id: &str) -> Option<NodeIx> {
        self.node_lookup.get(id).copied()
    }

    pub fn contains_node_id(&self, id: &str) -> bool {
        self.node_lookup.contains_key(id)
    }

    pub fn contains_arc_id(&self, id: &str) -> bool {
        self.arc_lookup.contains_key(id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// First of `base`, `base#1`, `base#2`, … not yet used as a node id.
    pub fn fresh_node_id(&self, base: &str) -> String {
        fresh_id(base, |s| self.node_lookup.contains_key(s))
    }

    /// First of `base`, `base#1`, `base#2`, … not yet used as an arc id.
    pub fn fresh_arc_id(&self, base: &str) -> String {
        fresh_id(base, |s| self.arc_lookup.contains_key(s))
    }

    pub fn build(self) -> DirectedGraph {
        let n = self.nodes.len();
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for (k, arc) in self.arcs.iter().enumerate() {
            out_arcs[arc.src.0].push(ArcIx(k));
            in_arcs[arc.tgt.0].push(ArcIx(k));
        }
        DirectedGraph {
            nodes: self.nodes,
            arcs: self.arcs,
            node_lookup: self.node_lookup,
            arc_lookup: self.arc_lookup,
            out_arcs,
            in_arcs,
        }
    }
}

pub(crate) fn fresh_id(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_owned();
    }
    (1..)
        .map(|k| format!("{base}#{k}"))
        .find(|s| !taken(s))
        .expect("unbounded search")
}

/// Square matrix of arc multiplicities: entry `(i, j)` counts arcs from node `i` to node `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    order: usize,
    entries: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.order.max(1)).take(self.order)
    }

    /// `trace(A^n)`, the number of based closed walks of length `n` (for `n = 0`, the order).
    ///
    /// Arithmetic saturates at `u128::MAX`.
    pub fn trace_of_power(&self, n: usize) -> u128 {
        let m = self.order;
        if n == 0 {
            return m as u128;
        }
        let base: Vec<u128> = self.entries.iter().map(|&e| e as u128).collect();
        let mut acc = base.clone();
        for _ in 1..n {
            let mut next = vec![0u128; m * m];
            for i in 0..m {
                for k in 0..m {
                    let lhs = acc[i * m + k];
                    if lhs == 0 {
                        continue;
                    }
                    for j in 0..m {
                        let prod = lhs.saturating_mul(base[k * m + j]);
                        next[i * m + j] = next[i * m + j].saturating_add(prod);
                    }
                }
            }
            acc = next;
        }
        (0..m).fold(0u128, |t, i| t.saturating_add(acc[i * m + i]))
    }
}
