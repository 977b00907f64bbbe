//! Eulerian cycles and arc-covering closed walks.
//!
//! The construction follows the classical cycle-attachment argument: leave a
//! node along unused arcs until the walk closes up, then repeatedly start a
//! new cycle at a visited node that still has an unused outgoing arc and
//! splice it in. The same pass yields an [`AttachmentDecomposition`], a script
//! of "attach a cycle at a node" and "identify two nodes" steps that rebuilds
//! the graph from its first cycle.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::graph::{fresh_id, ArcIx, DirectedGraph, NodeIx, SharedGraph};
use crate::homotopy::{attach_labeled_cycle, glue_nodes, HomotopyError};
use crate::scc::{is_strongly_connected, weak_components};
use crate::walk::ClosedWalk;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("graph has no arcs")]
    NoArcs,
    #[error("graph is not Eulerian (connected: {connected}, unbalanced nodes: {unbalanced})")]
    NotEulerian { connected: bool, unbalanced: usize },
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("replay failed: {0}")]
    Replay(#[from] HomotopyError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EulerOptions {
    /// Leave arcless isolated nodes out of the connectivity requirement.
    pub ignore_isolated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceViolation {
    pub node: NodeIx,
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub is_eulerian: bool,
    pub balance_violations: Vec<BalanceViolation>,
    pub connected: bool,
    pub cycle: Option<ClosedWalk>,
}

impl EulerReport {
    fn to_error(&self) -> EulerError {
        EulerError::NotEulerian {
            connected: self.connected,
            unbalanced: self.balance_violations.len(),
        }
    }
}

pub fn balance_violations(g: &DirectedGraph) -> Vec<BalanceViolation> {
    g.nodes()
        .filter_map(|x| {
            let (i, o) = (g.in_degree(x), g.out_degree(x));
            (i != o).then_some(BalanceViolation {
                node: x,
                in_degree: i,
                out_degree: o,
            })
        })
        .collect()
}

/// Connectivity of the underlying undirected graph, optionally over non-isolated nodes only.
pub(crate) fn connected_for_euler(g: &DirectedGraph, opts: EulerOptions) -> bool {
    let (labels, count) = weak_components(g);
    if !opts.ignore_isolated {
        return count == 1;
    }
    let isolated: HashSet<NodeIx> = g.isolated_nodes().into_iter().collect();
    let live: HashSet<usize> = g.nodes().filter(|x| !isolated.contains(x)).map(|x| labels[x.0]).collect();
    live.len() == 1
}

/// Degree balance plus connectivity; does not build the cycle.
pub fn euler_check(g: &DirectedGraph) -> Result<EulerReport, EulerError> {
    euler_check_with(g, EulerOptions::default())
}

pub fn euler_check_with(g: &DirectedGraph, opts: EulerOptions) -> Result<EulerReport, EulerError> {
    if g.arc_count() == 0 {
        return Err(EulerError::NoArcs);
    }
    let balance_violations = balance_violations(g);
    let connected = connected_for_euler(g, opts);
    Ok(EulerReport {
        is_eulerian: connected && balance_violations.is_empty(),
        balance_violations,
        connected,
        cycle: None,
    })
}

/// A closed walk using every arc exactly once.
pub fn euler_cycle(g: &DirectedGraph) -> Result<ClosedWalk, EulerError> {
    euler_cycle_with(g, EulerOptions::default())
}

pub fn euler_cycle_with(g: &DirectedGraph, opts: EulerOptions) -> Result<ClosedWalk, EulerError> {
    let report = euler_check_with(g, opts)?;
    if !report.is_eulerian {
        return Err(report.to_error());
    }
    let run = attachment_run(g);
    Ok(ClosedWalk::new_unchecked(g.source(run.walk[0]), run.walk))
}

/// Cycles in discovery order: the first is the base, each later one starts
/// and ends at `hub`, a node already visited. `walk` is the spliced result.
struct AttachmentRun {
    cycles: Vec<(NodeIx, Vec<ArcIx>)>,
    walk: Vec<ArcIx>,
}

/// Requires a balanced, connected graph with at least one arc.
fn attachment_run(g: &DirectedGraph) -> AttachmentRun {
    let m = g.arc_count();
    let mut used = vec![false; m];
    let mut next_out = vec![0usize; g.node_count()];
    let mut visited = vec![false; g.node_count()];
    // unused arcs leaving visited nodes
    let mut frontier: BTreeSet<ArcIx> = BTreeSet::new();
    // walk as a linked list over arcs; arrive[x] is a walk arc ending at x
    let mut next_in_walk: Vec<Option<ArcIx>> = vec![None; m];
    let mut arrive: Vec<Option<ArcIx>> = vec![None; g.node_count()];
    let mut cycles = Vec::new();

    let head = ArcIx(0);
    let mut hub = g.source(head);
    loop {
        let cycle = extract_cycle(g, hub, &mut used, &mut next_out);
        for &a in &cycle {
            frontier.remove(&a);
        }
        for &a in &cycle {
            let t = g.target(a);
            if !visited[t.0] {
                visited[t.0] = true;
                frontier.extend(g.out_arcs(t).iter().copied().filter(|b| !used[b.0]));
            }
        }
        // link the cycle internally, then splice it after a walk arc entering the hub
        for pair in cycle.windows(2) {
            next_in_walk[pair[0].0] = Some(pair[1]);
        }
        let last = *cycle.last().expect("cycles are nonempty");
        match arrive[hub.0] {
            None => next_in_walk[last.0] = None,
            Some(entry) => {
                next_in_walk[last.0] = next_in_walk[entry.0];
                next_in_walk[entry.0] = Some(cycle[0]);
            }
        }
        for &a in &cycle {
            let t = g.target(a);
            if arrive[t.0].is_none() {
                arrive[t.0] = Some(a);
            }
        }
        cycles.push((hub, cycle));

        match frontier.iter().next() {
            Some(&a) => hub = g.source(a),
            None => break,
        }
    }

    let mut walk = Vec::with_capacity(m);
    let mut at = Some(head);
    while let Some(a) = at {
        walk.push(a);
        at = next_in_walk[a.0];
    }
    debug_assert_eq!(walk.len(), m);
    AttachmentRun { cycles, walk }
}

/// Follows the smallest unused outgoing arc from `start` until the walk returns there.
fn extract_cycle(g: &DirectedGraph, start: NodeIx, used: &mut [bool], next_out: &mut [usize]) -> Vec<ArcIx> {
    let mut cycle = Vec::new();
    let mut at = start;
    loop {
        let outs = g.out_arcs(at);
        while next_out[at.0] < outs.len() && used[outs[next_out[at.0]].0] {
            next_out[at.0] += 1;
        }
        let a = outs[next_out[at.0]];
        used[a.0] = true;
        cycle.push(a);
        at = g.target(a);
        if at == start {
            return cycle;
        }
    }
}

/// Closed walk through every arc at least once, built by going out from the
/// first node along a shortest path to each not yet covered arc's source,
/// across the arc, and back along a shortest path. Not minimal in general.
pub fn covering_cycle(g: &DirectedGraph) -> Result<ClosedWalk, EulerError> {
    if g.arc_count() == 0 {
        return Err(EulerError::NoArcs);
    }
    if !is_strongly_connected(g).unwrap_or(false) {
        return Err(EulerError::NotStronglyConnected);
    }
    let root = NodeIx(0);
    let from_root = bfs_tree(g, root, false);
    let to_root = bfs_tree(g, root, true);
    let mut walk = Vec::new();
    let mut covered = vec![false; g.arc_count()];
    for a in g.arcs() {
        if covered[a.0] {
            continue;
        }
        let leg_start = walk.len();
        // path root → source(a): parents point back toward the root
        let mut out_leg = Vec::new();
        let mut at = g.source(a);
        while let Some(p) = from_root[at.0] {
            out_leg.push(p);
            at = g.source(p);
        }
        out_leg.reverse();
        walk.extend(out_leg);
        walk.push(a);
        let mut at = g.target(a);
        while let Some(p) = to_root[at.0] {
            walk.push(p);
            at = g.target(p);
        }
        for &b in &walk[leg_start..] {
            covered[b.0] = true;
        }
    }
    Ok(ClosedWalk::new_unchecked(root, walk))
}

/// BFS parent arcs from `root` (forward) or toward `root` (`reverse`).
fn bfs_tree(g: &DirectedGraph, root: NodeIx, reverse: bool) -> Vec<Option<ArcIx>> {
    let mut parent = vec![None; g.node_count()];
    let mut seen = vec![false; g.node_count()];
    seen[root.0] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let arcs = if reverse { g.in_arcs(x) } else { g.out_arcs(x) };
        for &a in arcs {
            let y = if reverse { g.source(a) } else { g.target(a) };
            if !seen[y.0] {
                seen[y.0] = true;
                parent[y.0] = Some(a);
                queue.push_back(y);
            }
        }
    }
    parent
}

/// A cycle given by its ids: `arcs[i]` runs from `nodes[i]` to `nodes[i + 1 mod n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpec {
    pub nodes: Vec<String>,
    pub arcs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttachmentStep {
    /// Identify `merge` with `keep`; `keep` is the smaller id, so the merged node keeps it.
    GlueNodes { keep: String, merge: String },
    /// Attach the cycle `at → nodes[0] → … → at` with the given arc ids.
    AttachCycle {
        at: String,
        nodes: Vec<String>,
        arcs: Vec<String>,
    },
}

/// A script that rebuilds an Eulerian graph from a single cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachmentDecomposition {
    pub base: CycleSpec,
    pub steps: Vec<AttachmentStep>,
}

impl AttachmentDecomposition {
    pub fn base_length(&self) -> usize {
        self.base.arcs.len()
    }

    pub fn attached_cycles(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, AttachmentStep::AttachCycle { .. }))
            .count()
    }

    /// Runs the script through the gluing operations.
    pub fn replay(&self) -> Result<DirectedGraph, EulerError> {
        let mut g: SharedGraph = DirectedGraph::labeled_cycle(&self.base.nodes, &self.base.arcs)
            .map_err(HomotopyError::from)?
            .into_shared();
        for step in &self.steps {
            let next = match step {
                AttachmentStep::GlueNodes { keep, merge } => {
                    let (x, y) = (g.node(keep).map_err(HomotopyError::from)?, g.node(merge).map_err(HomotopyError::from)?);
                    glue_nodes(&g, x, y)?
                }
                AttachmentStep::AttachCycle { at, nodes, arcs } => {
                    let x = g.node(at).map_err(HomotopyError::from)?;
                    attach_labeled_cycle(&g, x, nodes, arcs)?
                }
            };
            g = next.graph;
        }
        Ok(std::sync::Arc::unwrap_or_clone(g))
    }

    /// Replays the script and compares the result with `g` by ids: same node
    /// set, and every arc id has the same endpoints.
    pub fn reproduces(&self, g: &DirectedGraph) -> Result<bool, EulerError> {
        let replayed = self.replay()?;
        Ok(same_by_ids(&replayed, g))
    }
}

pub(crate) fn same_by_ids(a: &DirectedGraph, b: &DirectedGraph) -> bool {
    if a.node_count() != b.node_count() || a.arc_count() != b.arc_count() {
        return false;
    }
    if a.node_ids().iter().any(|id| !b.contains_node_id(id)) {
        return false;
    }
    a.arcs().all(|arc| match b.arc(a.arc_id(arc)) {
        Ok(other) => {
            a.node_id(a.source(arc)) == b.node_id(b.source(other)) && a.node_id(a.target(arc)) == b.node_id(b.target(other))
        }
        Err(_) => false,
    })
}

/// The cycle-attachment script discovered while constructing an Eulerian cycle.
///
/// Revisits of an already placed node are introduced under a fresh id
/// `<id>#k` and then identified with it, so the replay ends with exactly the
/// ids of `g`.
pub fn euler_decompose(g: &DirectedGraph) -> Result<AttachmentDecomposition, EulerError> {
    euler_decompose_with(g, EulerOptions::default())
}

pub fn euler_decompose_with(g: &DirectedGraph, opts: EulerOptions) -> Result<AttachmentDecomposition, EulerError> {
    let report = euler_check_with(g, opts)?;
    if !report.is_eulerian {
        return Err(report.to_error());
    }
    let run = attachment_run(g);
    let mut placed = vec![false; g.node_count()];
    let mut taken: HashSet<String> = g.node_ids().iter().cloned().collect();
    let mut label = |x: NodeIx, glues: &mut Vec<AttachmentStep>| -> String {
        let id = g.node_id(x);
        if !std::mem::replace(&mut placed[x.0], true) {
            return id.to_owned();
        }
        let fresh = fresh_id(&format!("{id}#1"), |s| taken.contains(s));
        taken.insert(fresh.clone());
        glues.push(AttachmentStep::GlueNodes {
            keep: id.to_owned(),
            merge: fresh.clone(),
        });
        fresh
    };

    let mut cycles = run.cycles.into_iter();
    let (_, first) = cycles.next().expect("at least one cycle");
    let mut steps = Vec::new();
    let mut glues = Vec::new();
    let base = CycleSpec {
        nodes: first.iter().map(|&a| label(g.source(a), &mut glues)).collect(),
        arcs: first.iter().map(|&a| g.arc_id(a).to_owned()).collect(),
    };
    steps.append(&mut glues);
    for (hub, cycle) in cycles {
        let nodes = cycle[1..].iter().map(|&a| label(g.source(a), &mut glues)).collect();
        steps.push(AttachmentStep::AttachCycle {
            at: g.node_id(hub).to_owned(),
            nodes,
            arcs: cycle.iter().map(|&a| g.arc_id(a).to_owned()).collect(),
        });
        steps.append(&mut glues);
    }
    Ok(AttachmentDecomposition { base, steps })
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

    fn uses_each_arc_once(g: &DirectedGraph, w: &ClosedWalk) -> bool {
        let mut arcs = w.arcs().to_vec();
        arcs.sort();
        arcs == g.arcs().collect::<Vec<_>>() && ClosedWalk::new(g, w.base(), w.arcs().to_vec()).is_ok()
    }

    #[test]
    fn check_examples() {
        assert!(euler_check(&DirectedGraph::standard_cycle(4)).unwrap().is_eulerian);
        let p3 = euler_check(&DirectedGraph::standard_path(3)).unwrap();
        assert!(!p3.is_eulerian);
        assert_eq!(
            p3.balance_violations,
            vec![
                BalanceViolation { node: NodeIx(0), in_degree: 0, out_degree: 1 },
                BalanceViolation { node: NodeIx(2), in_degree: 1, out_degree: 0 },
            ]
        );
        let fig = figure_eight();
        assert!(euler_check(&fig).unwrap().is_eulerian);
        assert_eq!(fig.degrees("h"), Ok((2, 2)));
        assert_eq!(euler_check(&DirectedGraph::standard_cycle(0)), Err(EulerError::NoArcs));
    }

    #[test]
    fn isolated_nodes_break_connectivity_unless_ignored() {
        let g = DirectedGraph::from_index_pairs(3, &[(0, 1), (1, 0)]);
        let strict = euler_check(&g).unwrap();
        assert!(!strict.is_eulerian && !strict.connected);
        let lax = euler_check_with(&g, EulerOptions { ignore_isolated: true }).unwrap();
        assert!(lax.is_eulerian);
        let w = euler_cycle_with(&g, EulerOptions { ignore_isolated: true }).unwrap();
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn cycle_examples() {
        let c4 = DirectedGraph::standard_cycle(4);
        let w = euler_cycle(&c4).unwrap();
        assert_eq!(w.arcs(), &[ArcIx(0), ArcIx(1), ArcIx(2), ArcIx(3)]);

        let fig = figure_eight();
        let w = euler_cycle(&fig).unwrap();
        assert_eq!(w.len(), 4);
        assert!(uses_each_arc_once(&fig, &w));

        let two = DirectedGraph::from_index_pairs(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        assert_eq!(
            euler_cycle(&two),
            Err(EulerError::NotEulerian { connected: false, unbalanced: 0 })
        );
    }

    #[test]
    fn splicing_nested_cycles() {
        // three loops and a 2-cycle hanging off different nodes
        let g = DirectedGraph::from_index_pairs(3, &[(0, 1), (1, 2), (2, 0), (1, 1), (2, 2), (0, 2), (2, 0)]);
        let w = euler_cycle(&g).unwrap();
        assert!(uses_each_arc_once(&g, &w));
        let gs = g.into_shared();
        let m = w.as_morphism(&gs);
        assert!(m.validate() && m.is_surjective_on_nodes() && m.is_injective_on_arcs() && m.is_surjective_on_arcs());
    }

    #[test]
    fn covering_examples() {
        let c3 = DirectedGraph::standard_cycle(3);
        assert_eq!(covering_cycle(&c3).unwrap().len(), 3);

        let g = DirectedGraph::build(["u", "v"], [("a", "u", "v"), ("b", "u", "v"), ("c", "v", "u")]).unwrap();
        let w = covering_cycle(&g).unwrap();
        assert!(ClosedWalk::new(&g, w.base(), w.arcs().to_vec()).is_ok());
        assert!(w.len() >= 4);
        for a in g.arcs() {
            assert!(w.arcs().contains(&a));
        }

        assert_eq!(
            covering_cycle(&DirectedGraph::standard_path(2)),
            Err(EulerError::NotStronglyConnected)
        );
    }

    #[test]
    fn decompose_examples() {
        let c5 = DirectedGraph::standard_cycle(5);
        let d = euler_decompose(&c5).unwrap();
        assert_eq!((d.base_length(), d.steps.len()), (5, 0));
        assert!(d.reproduces(&c5).unwrap());

        let fig = figure_eight();
        let d = euler_decompose(&fig).unwrap();
        assert_eq!(d.base_length(), 2);
        assert_eq!(
            d.steps,
            vec![AttachmentStep::AttachCycle {
                at: "h".into(),
                nodes: vec!["q".into()],
                arcs: vec!["c".into(), "d".into()],
            }]
        );
        assert!(d.reproduces(&fig).unwrap());

        let c1 = DirectedGraph::standard_cycle(1);
        let d = euler_decompose(&c1).unwrap();
        assert_eq!((d.base_length(), d.steps.len()), (1, 0));
    }

    #[test]
    fn decompose_with_revisits_replays_exactly() {
        // c4 with opposite nodes glued, walked as one 4-cycle through the hub twice
        let g = DirectedGraph::from_index_pairs(3, &[(0, 1), (1, 0), (0, 2), (2, 0)]);
        let d = euler_decompose(&g).unwrap();
        assert!(d.reproduces(&g).unwrap());

        let g = DirectedGraph::from_index_pairs(2, &[(0, 1), (1, 0), (0, 1), (1, 0), (0, 0)]);
        let d = euler_decompose(&g).unwrap();
        assert!(d.reproduces(&g).unwrap());
        assert!(euler_check(&d.replay().unwrap()).unwrap().is_eulerian);
    }
}
