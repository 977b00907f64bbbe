//! Weak equivalences defined by counting cycles, cofibrant replacement and
//! gluing constructions.
//!
//! A morphism `f: X → Y` is a weak equivalence when composition with `f`
//! gives a bijection `Hom(c_n, X) → Hom(c_n, Y)` for every `n ≥ 0`; the
//! cycles-only variant quantifies over `n > 0`. Since those conditions range
//! over infinitely many `n`, membership is decided structurally through
//! strongly connected components, and hom-set enumeration is kept as a
//! bounded falsifier ([`brute_force_weq_check`]).

mod surgery;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{ArcIx, DirectedGraph, GraphError, NodeIx, SharedGraph};
use crate::morphism::GraphMorphism;
use crate::scc::{scc_decompose, SccDecomposition};
use crate::walk::ClosedWalk;

pub use surgery::{attach_cycle, attach_labeled_cycle, glue_nodes, glue_paths, Surgery};

/// Default bound on the size of an enumerated hom-set.
pub const DEFAULT_HOM_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("hom-set of length-{length} cycles has {count} elements, above the cap of {cap}")]
    CapExceeded { length: usize, count: u128, cap: u128 },
    #[error("morphism does not commute with source and target ({0} violations)")]
    InvalidMorphism(usize),
    #[error("cannot glue a node to itself")]
    SameNode,
    #[error("paths have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("paths do not share start and end nodes")]
    EndpointMismatch,
    #[error("paths must be simple and arc-disjoint")]
    NotSimple,
    #[error("cycle length must be positive")]
    ZeroLength,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The based closed walks of one length; rotations are distinct elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    pub cycle_length: usize,
    pub morphisms: Vec<ClosedWalk>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }
}

/// `|Hom(c_n, g)|`, computed as `trace(A^n)`.
pub fn count_hom_cycles(g: &DirectedGraph, n: usize) -> u128 {
    g.adjacency_matrix().trace_of_power(n)
}

/// Lists every morphism `c_n → g` as a based closed walk, ordered by base node
/// then lexicographically by arc index.
pub fn enumerate_hom_cycles(g: &DirectedGraph, n: usize, cap: u128) -> Result<HomSet, HomotopyError> {
    let count = count_hom_cycles(g, n);
    if count > cap {
        return Err(HomotopyError::CapExceeded { length: n, count, cap });
    }
    let mut morphisms = Vec::with_capacity(count as usize);
    if n == 0 {
        morphisms.extend(g.nodes().map(|x| ClosedWalk::new_unchecked(x, Vec::new())));
    } else {
        let mut path = Vec::with_capacity(n);
        for base in g.nodes() {
            extend_walks(g, base, base, n, &mut path, &mut |arcs| {
                morphisms.push(ClosedWalk::new_unchecked(base, arcs.to_vec()));
            });
        }
    }
    Ok(HomSet { cycle_length: n, morphisms })
}

/// Depth-first extension of `path` to closed walks of exactly `n` arcs.
fn extend_walks(
    g: &DirectedGraph,
    base: NodeIx,
    at: NodeIx,
    n: usize,
    path: &mut Vec<ArcIx>,
    emit: &mut impl FnMut(&[ArcIx]),
) {
    if path.len() == n {
        if at == base {
            emit(path);
        }
        return;
    }
    for &a in g.out_arcs(at) {
        path.push(a);
        extend_walks(g, base, g.target(a), n, path, emit);
        path.pop();
    }
}

/// Why a morphism fails the structural weak-equivalence test. Component indices
/// refer to the [`SccDecomposition`] of the domain (`component`) or codomain (`target`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    InvalidMorphism(usize),
    ComponentSplit { component: usize },
    NotInjectiveOnNodes { component: usize, nodes: (NodeIx, NodeIx) },
    NotSurjectiveOnNodes { component: usize, target: usize, missing: NodeIx },
    NotInjectiveOnArcs { component: usize, arcs: (ArcIx, ArcIx) },
    NotSurjectiveOnArcs { component: usize, target: usize, missing: ArcIx },
    ComponentsCollide { components: (usize, usize), target: usize },
    ComponentMissed { target: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::InvalidMorphism(n) => write!(f, "not a morphism ({n} violated squares)"),
            Witness::ComponentSplit { component } => {
                write!(f, "component {component} is spread over several codomain components")
            }
            Witness::NotInjectiveOnNodes { component, nodes } => write!(
                f,
                "component {component}: nodes {} and {} have the same image",
                nodes.0, nodes.1
            ),
            Witness::NotSurjectiveOnNodes { component, target, missing } => write!(
                f,
                "component {component} covers codomain component {target} only partially: node {missing} missed"
            ),
            Witness::NotInjectiveOnArcs { component, arcs } => write!(
                f,
                "component {component}: arcs {} and {} have the same image",
                arcs.0, arcs.1
            ),
            Witness::NotSurjectiveOnArcs { component, target, missing } => write!(
                f,
                "component {component} covers codomain component {target} only partially: arc {missing} missed"
            ),
            Witness::ComponentsCollide { components, target } => write!(
                f,
                "components {} and {} both land on codomain component {target}",
                components.0, components.1
            ),
            Witness::ComponentMissed { target } => {
                write!(f, "codomain component {target} is not the image of any component")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakEquivalenceVerdict {
    pub is_weak_equivalence: bool,
    /// `(domain component, codomain component)` pairs; filled only when the verdict is positive.
    pub component_matching: Vec<(usize, usize)>,
    pub witness: Option<Witness>,
}

impl WeakEquivalenceVerdict {
    fn fail(witness: Witness) -> Self {
        Self {
            is_weak_equivalence: false,
            component_matching: Vec::new(),
            witness: Some(witness),
        }
    }
}

/// Decides whether `f` induces bijections on `Hom(c_n, -)` for all `n ≥ 0`.
///
/// Holds iff every strongly connected component of the domain is mapped
/// isomorphically onto a component of the codomain and the induced map on
/// component sets is a bijection.
pub fn is_weak_equivalence(f: &GraphMorphism) -> Result<WeakEquivalenceVerdict, HomotopyError> {
    check_valid(f)?;
    let dom = scc_decompose(f.domain());
    let cod = scc_decompose(f.codomain());
    Ok(component_verdict(f, &dom, &cod, false))
}

/// Like [`is_weak_equivalence`] with precomputed decompositions of domain and codomain.
pub fn is_weak_equivalence_with(
    f: &GraphMorphism,
    dom: &SccDecomposition,
    cod: &SccDecomposition,
    cycles_only: bool,
) -> Result<WeakEquivalenceVerdict, HomotopyError> {
    check_valid(f)?;
    Ok(component_verdict(f, dom, cod, cycles_only))
}

/// Decides the cycles-only variant (`n > 0`): the component test restricted to
/// components that contain at least one arc.
///
/// This restriction is a derived test, not a proven characterization. It is
/// sound, since positive-length closed walks never visit arcless singleton
/// components, but it is not complete: the graph on `{x, y}` with all four
/// arcs, sent to the bouquet of two loops by labeling every arc with the loop
/// of its source, is bijective on closed walks of every positive length and is
/// still rejected here. See the `cycles_only_is_not_complete` test.
pub fn is_weak_equivalence_cycles_only(f: &GraphMorphism) -> Result<WeakEquivalenceVerdict, HomotopyError> {
    check_valid(f)?;
    let dom = scc_decompose(f.domain());
    let cod = scc_decompose(f.codomain());
    Ok(component_verdict(f, &dom, &cod, true))
}

fn check_valid(f: &GraphMorphism) -> Result<(), HomotopyError> {
    let violations = f.violations();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(HomotopyError::InvalidMorphism(violations.len()))
    }
}

fn component_verdict(
    f: &GraphMorphism,
    dom: &SccDecomposition,
    cod: &SccDecomposition,
    cycles_only: bool,
) -> WeakEquivalenceVerdict {
    let x = f.domain();
    let y = f.codomain();
    let dom_subs = dom.subgraphs(x);
    let cod_subs = cod.subgraphs(y);

    let mut node_hit: Vec<Option<NodeIx>> = vec![None; y.node_count()];
    let mut arc_hit: Vec<Option<ArcIx>> = vec![None; y.arc_count()];
    let mut target_of: Vec<Option<usize>> = vec![None; cod_subs.len()];
    let mut matching = Vec::new();

    for sub in dom_subs.iter().filter(|s| !(cycles_only && s.is_trivial())) {
        let target = cod.component_of[f.map_node(sub.nodes[0]).0];
        for &v in &sub.nodes {
            let image = f.map_node(v);
            if cod.component_of[image.0] != target {
                return WeakEquivalenceVerdict::fail(Witness::ComponentSplit { component: sub.component });
            }
            if let Some(prev) = node_hit[image.0].replace(v) {
                return WeakEquivalenceVerdict::fail(Witness::NotInjectiveOnNodes {
                    component: sub.component,
                    nodes: (prev, v),
                });
            }
        }
        let tsub = &cod_subs[target];
        if let Some(&missing) = tsub.nodes.iter().find(|w| node_hit[w.0].is_none()) {
            return WeakEquivalenceVerdict::fail(Witness::NotSurjectiveOnNodes {
                component: sub.component,
                target,
                missing,
            });
        }
        for &a in &sub.arcs {
            let image = f.map_arc(a);
            if let Some(prev) = arc_hit[image.0].replace(a) {
                return WeakEquivalenceVerdict::fail(Witness::NotInjectiveOnArcs {
                    component: sub.component,
                    arcs: (prev, a),
                });
            }
        }
        if let Some(&missing) = tsub.arcs.iter().find(|b| arc_hit[b.0].is_none()) {
            return WeakEquivalenceVerdict::fail(Witness::NotSurjectiveOnArcs {
                component: sub.component,
                target,
                missing,
            });
        }
        if let Some(prev) = target_of[target].replace(sub.component) {
            return WeakEquivalenceVerdict::fail(Witness::ComponentsCollide {
                components: (prev, sub.component),
                target,
            });
        }
        matching.push((sub.component, target));
    }

    for tsub in cod_subs.iter().filter(|s| !(cycles_only && s.is_trivial())) {
        if target_of[tsub.component].is_none() {
            return WeakEquivalenceVerdict::fail(Witness::ComponentMissed { target: tsub.component });
        }
    }

    WeakEquivalenceVerdict {
        is_weak_equivalence: true,
        component_matching: matching,
        witness: None,
    }
}

/// Outcome of the enumeration check at one cycle length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthCheck {
    pub length: usize,
    pub domain_count: u128,
    pub codomain_count: u128,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub lengths: Vec<LengthCheck>,
}

impl OracleReport {
    pub fn all_bijective(&self) -> bool {
        self.lengths.iter().all(|c| c.bijective)
    }

    pub fn first_failure(&self) -> Option<&LengthCheck> {
        self.lengths.iter().find(|c| !c.bijective)
    }
}

/// For each `n` up to `n_max` (from 0 when `include_zero`), whether composing
/// with `f` is a bijection `Hom(c_n, X) → Hom(c_n, Y)`.
///
/// Cardinalities are compared first; when they agree the domain hom-set is
/// enumerated and the map is checked for injectivity. A falsifier only: it
/// says nothing about lengths beyond `n_max`.
pub fn brute_force_weq_check(
    f: &GraphMorphism,
    n_max: usize,
    include_zero: bool,
    cap: u128,
) -> Result<OracleReport, HomotopyError> {
    check_valid(f)?;
    let x_adj = f.domain().adjacency_matrix();
    let y_adj = f.codomain().adjacency_matrix();
    let start = if include_zero { 0 } else { 1 };
    let mut lengths = Vec::new();
    for n in start..=n_max {
        let domain_count = x_adj.trace_of_power(n);
        let codomain_count = y_adj.trace_of_power(n);
        let bijective = domain_count == codomain_count && hom_map_injective(f, n, domain_count, cap)?;
        lengths.push(LengthCheck {
            length: n,
            domain_count,
            codomain_count,
            bijective,
        });
    }
    Ok(OracleReport { lengths })
}

fn hom_map_injective(f: &GraphMorphism, n: usize, count: u128, cap: u128) -> Result<bool, HomotopyError> {
    if count > cap {
        return Err(HomotopyError::CapExceeded { length: n, count, cap });
    }
    let g = f.domain();
    if n == 0 {
        return Ok(f.is_injective_on_nodes());
    }
    let mut images: HashSet<Vec<ArcIx>> = HashSet::with_capacity(count as usize);
    let mut injective = true;
    let mut path = Vec::with_capacity(n);
    for base in g.nodes() {
        // the arc sequence of an image walk determines its base node
        extend_walks(g, base, base, n, &mut path, &mut |arcs| {
            if injective {
                let image: Vec<ArcIx> = arcs.iter().map(|&a| f.map_arc(a)).collect();
                injective = images.insert(image);
            }
        });
        if !injective {
            break;
        }
    }
    Ok(injective)
}

/// The subgraph with all nodes and only the arcs inside some strongly connected
/// component, together with its inclusion.
#[derive(Clone, Debug)]
pub struct CofibrantReplacement {
    pub graph: SharedGraph,
    pub embedding: GraphMorphism,
}

pub fn cofibrant_replacement(g: &SharedGraph) -> CofibrantReplacement {
    let scc = scc_decompose(g);
    let mut arc_map = Vec::new();
    let graph = g
        .arc_subgraph(|a| {
            let inner = scc.is_inner_arc(g, a);
            if inner {
                arc_map.push(a);
            }
            inner
        })
        .into_shared();
    let embedding = GraphMorphism::new(graph.clone(), g.clone(), g.nodes().collect(), arc_map)
        .expect("inclusion is total");
    CofibrantReplacement { graph, embedding }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shared(g: DirectedGraph) -> SharedGraph {
        g.into_shared()
    }

    fn collapse_to_dot(x: &SharedGraph) -> GraphMorphism {
        let dot = shared(DirectedGraph::standard_cycle(0));
        GraphMorphism::new(x.clone(), dot, vec![NodeIx(0); x.node_count()], vec![]).unwrap()
    }

    #[test]
    fn hom_enumeration_examples() {
        let c3 = DirectedGraph::standard_cycle(3);
        assert_eq!(enumerate_hom_cycles(&c3, 3, DEFAULT_HOM_CAP).unwrap().len(), 3);
        assert_eq!(enumerate_hom_cycles(&c3, 4, DEFAULT_HOM_CAP).unwrap().len(), 0);
        assert_eq!(enumerate_hom_cycles(&c3, 0, DEFAULT_HOM_CAP).unwrap().len(), 3);
        let c1 = DirectedGraph::standard_cycle(1);
        for n in 0..6 {
            assert_eq!(enumerate_hom_cycles(&c1, n, DEFAULT_HOM_CAP).unwrap().len(), 1);
        }
    }

    #[test]
    fn hom_enumeration_respects_cap() {
        let g = DirectedGraph::from_index_pairs(1, &[(0, 0), (0, 0)]);
        assert_eq!(
            enumerate_hom_cycles(&g, 4, 15),
            Err(HomotopyError::CapExceeded { length: 4, count: 16, cap: 15 })
        );
    }

    #[test]
    fn standard_cycle_hom_is_rotations() {
        for n in 1..7 {
            let c = DirectedGraph::standard_cycle(n);
            let homs = enumerate_hom_cycles(&c, n, DEFAULT_HOM_CAP).unwrap();
            assert_eq!(homs.len(), n);
            let w0 = &homs.morphisms[0];
            for (k, w) in homs.morphisms.iter().enumerate() {
                assert_eq!(*w, w0.rotated(&c, k));
            }
        }
    }

    #[test]
    fn weak_equivalence_examples() {
        let c3 = shared(DirectedGraph::standard_cycle(3));
        let v = is_weak_equivalence(&GraphMorphism::identity(&c3)).unwrap();
        assert!(v.is_weak_equivalence);
        assert_eq!(v.component_matching, vec![(0, 0)]);

        let p2 = shared(DirectedGraph::standard_path(2));
        let rep = cofibrant_replacement(&p2);
        assert!(is_weak_equivalence(&rep.embedding).unwrap().is_weak_equivalence);

        // no morphism P_2 → D exists, so the collapse starts from P_2's two nodes
        let collapse = collapse_to_dot(&shared(DirectedGraph::from_index_pairs(2, &[])));
        let v = is_weak_equivalence(&collapse).unwrap();
        assert!(!v.is_weak_equivalence);
        assert!(v.witness.is_some());
    }

    #[test]
    fn cycles_only_is_not_complete() {
        let k2 = shared(DirectedGraph::from_index_pairs(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]));
        let bouquet = shared(DirectedGraph::from_index_pairs(1, &[(0, 0), (0, 0)]));
        let f = GraphMorphism::new(k2, bouquet, vec![NodeIx(0); 2], vec![ArcIx(0), ArcIx(0), ArcIx(1), ArcIx(1)]).unwrap();
        assert!(!is_weak_equivalence_cycles_only(&f).unwrap().is_weak_equivalence);
        let report = brute_force_weq_check(&f, 10, false, DEFAULT_HOM_CAP).unwrap();
        assert!(report.all_bijective());
    }

    #[test]
    fn cycles_only_examples() {
        let two_dots = shared(DirectedGraph::from_index_pairs(2, &[]));
        assert!(is_weak_equivalence_cycles_only(&collapse_to_dot(&two_dots)).unwrap().is_weak_equivalence);

        let c3 = shared(DirectedGraph::standard_cycle(3));
        assert!(is_weak_equivalence_cycles_only(&GraphMorphism::identity(&c3)).unwrap().is_weak_equivalence);

        // fold c3 + c3 → c3
        let two = shared(DirectedGraph::from_index_pairs(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]));
        let fold = GraphMorphism::new(
            two.clone(),
            c3.clone(),
            (0..6).map(|i| NodeIx(i % 3)).collect(),
            (0..6).map(|i| ArcIx(i % 3)).collect(),
        )
        .unwrap();
        let v = is_weak_equivalence_cycles_only(&fold).unwrap();
        assert!(!v.is_weak_equivalence);
        assert!(matches!(v.witness, Some(Witness::NotInjectiveOnNodes { component: 1, .. })));
        // brute force: 6 based 3-cycles upstairs, 3 downstairs
        let report = brute_force_weq_check(&fold, 3, false, DEFAULT_HOM_CAP).unwrap();
        let at3 = &report.lengths[2];
        assert_eq!((at3.domain_count, at3.codomain_count, at3.bijective), (6, 3, false));
    }

    #[test]
    fn invalid_morphism_is_an_error() {
        let c3 = shared(DirectedGraph::standard_cycle(3));
        let bad = GraphMorphism::new(c3.clone(), c3.clone(), c3.nodes().collect(), vec![ArcIx(1), ArcIx(1), ArcIx(2)]).unwrap();
        assert_eq!(is_weak_equivalence(&bad), Err(HomotopyError::InvalidMorphism(2)));
    }

    #[test]
    fn oracle_examples() {
        let g = shared(DirectedGraph::from_index_pairs(3, &[(0, 1), (1, 0), (1, 2)]));
        let report = brute_force_weq_check(&GraphMorphism::identity(&g), 5, true, DEFAULT_HOM_CAP).unwrap();
        assert!(report.all_bijective());

        // c2 with a pendant arc: its cofibrant replacement drops the pendant
        let rep = cofibrant_replacement(&g);
        assert_eq!(rep.graph.arc_count(), 2);
        let report = brute_force_weq_check(&rep.embedding, 6, true, DEFAULT_HOM_CAP).unwrap();
        assert!(report.all_bijective());
        assert_eq!(report.lengths.len(), 7);

        let c2 = shared(DirectedGraph::standard_cycle(2));
        let c1 = shared(DirectedGraph::standard_cycle(1));
        let collapse = GraphMorphism::new(c2, c1, vec![NodeIx(0); 2], vec![ArcIx(0); 2]).unwrap();
        let report = brute_force_weq_check(&collapse, 2, false, DEFAULT_HOM_CAP).unwrap();
        let first = report.first_failure().unwrap();
        assert_eq!((first.length, first.domain_count, first.codomain_count), (1, 0, 1));
    }

    #[test]
    fn cofibrant_replacement_examples() {
        let c3 = shared(DirectedGraph::standard_cycle(3));
        let rep = cofibrant_replacement(&c3);
        assert_eq!(*rep.graph, *c3);
        assert_eq!(rep.embedding.arc_map(), GraphMorphism::identity(&c3).arc_map());

        let p4 = shared(DirectedGraph::standard_path(4));
        let rep = cofibrant_replacement(&p4);
        assert_eq!((rep.graph.node_count(), rep.graph.arc_count()), (4, 0));

        let figure_eight = shared(DirectedGraph::from_index_pairs(3, &[(0, 1), (1, 0), (0, 2), (2, 0)]));
        let rep = cofibrant_replacement(&figure_eight);
        assert_eq!(*rep.graph, *figure_eight);
        let again = cofibrant_replacement(&rep.graph);
        assert_eq!(*again.graph, *rep.graph);
    }
}
