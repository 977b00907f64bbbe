//! Reflexive graphs: every node carries a distinguished self-loop `[x]`.
//!
//! Degenerate loops are stored as ordinary arcs together with a marker, so the
//! forgetful functor is the identity on data and [`strip_degeneracies`] is its
//! counterpart that removes exactly the marked loops.
//!
//! [`is_weak_equivalence_reflexive`] uses the component characterization as
//! the definition of the check. Only the forward direction (componentwise
//! isomorphism implies bijections on cycles) is backed by proof; the converse
//! is not claimed.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{ArcIx, DirectedGraph, GraphError, NodeIx, SharedGraph};
use crate::homotopy::{enumerate_hom_cycles, is_weak_equivalence, HomSet, HomotopyError, WeakEquivalenceVerdict};
use crate::morphism::GraphMorphism;
use crate::scc::scc_decompose;
use crate::walk::ClosedWalk;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflexiveError {
    #[error("node `{0}` has no degeneracy")]
    MissingDegeneracy(String),
    #[error("arc `{0}` is the degeneracy of two nodes")]
    SharedDegeneracy(String),
    #[error("degeneracy `{arc}` of node `{node}` is not a loop at that node")]
    NotALoopAt { node: String, arc: String },
    #[error("morphism sends the degeneracy of `{0}` to a non-degenerate arc or the wrong loop")]
    DegeneracyNotPreserved(String),
    #[error("reflexive morphism between graphs that differ from its underlying morphism")]
    MismatchedGraphs,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflexiveGraph {
    graph: SharedGraph,
    degeneracy: Vec<ArcIx>,
    degenerate: Vec<bool>,
}

impl ReflexiveGraph {
    /// Checks that `degeneracy` assigns an own self-loop to every node, injectively.
    pub fn new(graph: SharedGraph, degeneracy: Vec<ArcIx>) -> Result<Self, ReflexiveError> {
        if degeneracy.len() != graph.node_count() {
            let missing = graph.node_id(NodeIx(degeneracy.len().min(graph.node_count().saturating_sub(1))));
            return Err(ReflexiveError::MissingDegeneracy(missing.to_string()));
        }
        let mut degenerate = vec![false; graph.arc_count()];
        for (x, &a) in degeneracy.iter().enumerate() {
            let x = NodeIx(x);
            if a.0 >= graph.arc_count() || graph.source(a) != x || graph.target(a) != x {
                return Err(ReflexiveError::NotALoopAt {
                    node: graph.node_id(x).to_string(),
                    arc: if a.0 < graph.arc_count() { graph.arc_id(a).to_string() } else { a.to_string() },
                });
            }
            if std::mem::replace(&mut degenerate[a.0], true) {
                return Err(ReflexiveError::SharedDegeneracy(graph.arc_id(a).to_string()));
            }
        }
        Ok(Self {
            graph,
            degeneracy,
            degenerate,
        })
    }

    /// Degeneracies given as `(node id, arc id)` pairs.
    pub fn from_ids<'a>(
        graph: SharedGraph,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, ReflexiveError> {
        let mut degeneracy = vec![None; graph.node_count()];
        for (x, a) in pairs {
            degeneracy[graph.node(x)?.0] = Some(graph.arc(a)?);
        }
        let degeneracy = degeneracy
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| ReflexiveError::MissingDegeneracy(graph.node_id(NodeIx(i)).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(graph, degeneracy)
    }

    /// `D_R`, with node `x0` and its degeneracy `[x0]`.
    pub fn dot() -> Self {
        add_degeneracies(&DirectedGraph::standard_cycle(0))
    }

    pub fn graph(&self) -> &SharedGraph {
        &self.graph
    }

    pub fn degeneracy(&self, x: NodeIx) -> ArcIx {
        self.degeneracy[x.0]
    }

    pub fn degeneracies(&self) -> &[ArcIx] {
        &self.degeneracy
    }

    pub fn is_degenerate(&self, a: ArcIx) -> bool {
        self.degenerate[a.0]
    }

    /// Arcs that are not degeneracies, in graph order.
    pub fn nondegenerate_arcs(&self) -> Vec<ArcIx> {
        self.graph.arcs().filter(|&a| !self.degenerate[a.0]).collect()
    }
}

/// A graph morphism that sends `[x]` to `[f(x)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflexiveMorphism {
    domain: ReflexiveGraph,
    codomain: ReflexiveGraph,
    underlying: GraphMorphism,
}

impl ReflexiveMorphism {
    pub fn new(domain: ReflexiveGraph, codomain: ReflexiveGraph, underlying: GraphMorphism) -> Result<Self, ReflexiveError> {
        if **underlying.domain() != *domain.graph || **underlying.codomain() != *codomain.graph {
            return Err(ReflexiveError::MismatchedGraphs);
        }
        for x in domain.graph.nodes() {
            if underlying.map_arc(domain.degeneracy(x)) != codomain.degeneracy(underlying.map_node(x)) {
                return Err(ReflexiveError::DegeneracyNotPreserved(domain.graph.node_id(x).to_string()));
            }
        }
        Ok(Self {
            domain,
            codomain,
            underlying,
        })
    }

    pub fn domain(&self) -> &ReflexiveGraph {
        &self.domain
    }

    pub fn codomain(&self) -> &ReflexiveGraph {
        &self.codomain
    }

    pub fn underlying(&self) -> &GraphMorphism {
        &self.underlying
    }

    /// The unique morphism to `D_R`.
    pub fn to_dot(domain: ReflexiveGraph) -> Self {
        let dot = ReflexiveGraph::dot();
        let underlying = GraphMorphism::new(
            domain.graph.clone(),
            dot.graph.clone(),
            vec![NodeIx(0); domain.graph.node_count()],
            vec![ArcIx(0); domain.graph.arc_count()],
        )
        .expect("total maps into a one-arc graph");
        Self {
            domain,
            codomain: dot,
            underlying,
        }
    }
}

/// Appends a fresh loop `[x]` at every node, after the existing arcs.
pub fn add_degeneracies(g: &DirectedGraph) -> ReflexiveGraph {
    let mut builder = g.to_builder();
    let mut degeneracy = Vec::with_capacity(g.node_count());
    for x in g.nodes() {
        let id = builder.fresh_arc_id(&format!("[{}]", g.node_id(x)));
        degeneracy.push(builder.add_arc(id, x, x).expect("fresh id"));
    }
    ReflexiveGraph::new(builder.build().into_shared(), degeneracy).expect("one own loop per node")
}

/// Extends `f` to the freely added degeneracies.
pub fn add_degeneracies_morphism(f: &GraphMorphism) -> ReflexiveMorphism {
    let domain = add_degeneracies(f.domain());
    let codomain = add_degeneracies(f.codomain());
    let mut arc_map = f.arc_map().to_vec();
    arc_map.extend(f.node_map().iter().map(|&y| codomain.degeneracy(y)));
    let underlying = GraphMorphism::new(domain.graph.clone(), codomain.graph.clone(), f.node_map().to_vec(), arc_map)
        .expect("total maps");
    ReflexiveMorphism {
        domain,
        codomain,
        underlying,
    }
}

/// The underlying graph, degeneracies included as plain loops.
pub fn forget_reflexive(g: &ReflexiveGraph) -> DirectedGraph {
    (*g.graph).clone()
}

/// The underlying graph without the degenerate loops.
pub fn strip_degeneracies(g: &ReflexiveGraph) -> DirectedGraph {
    g.graph.arc_subgraph(|a| !g.degenerate[a.0])
}

/// Whether some step of `w` is a degeneracy.
pub fn is_degenerate_cycle(g: &ReflexiveGraph, w: &ClosedWalk) -> bool {
    w.arcs().iter().any(|&a| g.is_degenerate(a))
}

/// Closed walks of length `n` avoiding every degeneracy, with arc indices of `g`.
pub fn enumerate_nondegenerate_cycles(g: &ReflexiveGraph, n: usize, cap: u128) -> Result<HomSet, ReflexiveError> {
    let kept = g.nondegenerate_arcs();
    let stripped = strip_degeneracies(g);
    let mut set = enumerate_hom_cycles(&stripped, n, cap)?;
    for w in &mut set.morphisms {
        let arcs = w.arcs().iter().map(|a| kept[a.0]).collect();
        *w = ClosedWalk::new_unchecked(w.base(), arcs);
    }
    Ok(set)
}

/// Component test on the underlying morphism.
pub fn is_weak_equivalence_reflexive(f: &ReflexiveMorphism) -> Result<WeakEquivalenceVerdict, ReflexiveError> {
    for g in [&f.domain, &f.codomain] {
        assert!(
            scc_decompose(&g.graph).same_partition(&scc_decompose(&strip_degeneracies(g))),
            "degenerate loops never change reachability"
        );
    }
    Ok(is_weak_equivalence(&f.underlying)?)
}

/// Whether `f` maps nondegenerate cycles of each length `1..=n_max`
/// bijectively onto the nondegenerate cycles of the codomain.
pub fn induces_nondegenerate_bijection(f: &ReflexiveMorphism, n_max: usize, cap: u128) -> Result<bool, ReflexiveError> {
    for n in 1..=n_max {
        let source = enumerate_nondegenerate_cycles(&f.domain, n, cap)?;
        let target = enumerate_nondegenerate_cycles(&f.codomain, n, cap)?;
        if source.len() != target.len() {
            return Ok(false);
        }
        let mut images = HashSet::with_capacity(source.len());
        for w in &source.morphisms {
            let image = w.image(&f.underlying);
            if is_degenerate_cycle(&f.codomain, &image) || !images.insert(image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
