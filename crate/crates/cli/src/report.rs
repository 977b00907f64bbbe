//! Report types. Each serializes with fields in declaration order and renders
//! as `key: value` text.

use std::fmt::Write;

use hog_core::euler::AttachmentStep;
use hog_core::homology::ArcChain;
use hog_core::homotopy::Witness;
use hog_core::io::{GraphJson, MorphismJson};
use hog_core::pagerank::ConnectivityReport;
use hog_core::{ClosedWalk, DirectedGraph, GraphMorphism};
use indexmap::IndexMap;
use serde::Serialize;

pub trait Render: Serialize {
    fn text(&self) -> String;
}

fn render_graph(out: &mut String, g: &GraphJson) {
    let _ = writeln!(out, "nodes: {}", g.nodes.join(" "));
    let _ = writeln!(out, "arcs: {}", g.arcs.len());
    for a in &g.arcs {
        let _ = writeln!(out, "  {}: {} -> {}", a.id, a.src, a.tgt);
    }
    if let Some(deg) = &g.degeneracies {
        let _ = writeln!(out, "degeneracies:");
        for (x, a) in deg {
            let _ = writeln!(out, "  {x}: {a}");
        }
    }
}

fn render_map(out: &mut String, title: &str, m: &MorphismJson) {
    let _ = writeln!(out, "{title}:");
    for (from, to) in m.nodes.iter().chain(&m.arcs) {
        let _ = writeln!(out, "  {from} -> {to}");
    }
}

/// `a0 + 2*a1 - a2`; the zero chain renders as `0`.
pub fn chain_expression(coefficients: &IndexMap<String, i64>) -> String {
    let mut out = String::new();
    for (id, &k) in coefficients {
        let sign = if k < 0 { "-" } else { "+" };
        if out.is_empty() {
            if k < 0 {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if k.abs() != 1 {
            let _ = write!(out, "{}*", k.abs());
        }
        out.push_str(id);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn chain_map(u: &ArcChain<'_>) -> IndexMap<String, i64> {
    hog_core::io::chain_to_json(u).coefficients
}

#[derive(Serialize)]
pub struct WalkJson {
    pub base: String,
    pub arcs: Vec<String>,
}

impl WalkJson {
    pub fn new(g: &DirectedGraph, w: &ClosedWalk) -> Self {
        Self {
            base: g.node_id(w.base()).to_string(),
            arcs: w.arc_ids(g).into_iter().map(str::to_string).collect(),
        }
    }

    fn render(&self) -> String {
        if self.arcs.is_empty() {
            format!("({})", self.base)
        } else {
            self.arcs.join(" ")
        }
    }
}

/// Witness text with node and arc ids in place of indices.
pub fn describe_witness(w: &Witness, f: &GraphMorphism) -> String {
    let (x, y) = (f.domain(), f.codomain());
    match w {
        Witness::NotInjectiveOnNodes { component, nodes } => format!(
            "component {component}: nodes {} and {} have the same image {}",
            x.node_id(nodes.0),
            x.node_id(nodes.1),
            y.node_id(f.map_node(nodes.0))
        ),
        Witness::NotSurjectiveOnNodes { component, target, missing } => format!(
            "component {component} covers codomain component {target} only partially: node {} missed",
            y.node_id(*missing)
        ),
        Witness::NotInjectiveOnArcs { component, arcs } => format!(
            "component {component}: arcs {} and {} have the same image {}",
            x.arc_id(arcs.0),
            x.arc_id(arcs.1),
            y.arc_id(f.map_arc(arcs.0))
        ),
        Witness::NotSurjectiveOnArcs { component, target, missing } => format!(
            "component {component} covers codomain component {target} only partially: arc {} missed",
            y.arc_id(*missing)
        ),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
pub struct SccReport {
    pub strongly_connected: bool,
    pub component_count: usize,
    /// Reverse topological order: no arc leads from a component to a later one.
    pub components: Vec<Vec<String>>,
    pub condensation: GraphJson,
}

impl Render for SccReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "strongly_connected: {}", self.strongly_connected);
        let _ = writeln!(out, "components: {}", self.component_count);
        for (k, c) in self.components.iter().enumerate() {
            let _ = writeln!(out, "  {k}: {}", c.join(" "));
        }
        let _ = writeln!(out, "condensation:");
        for a in &self.condensation.arcs {
            let _ = writeln!(out, "  {}: {} -> {}", a.id, a.src, a.tgt);
        }
        out
    }
}

#[derive(Serialize)]
pub struct OracleLine {
    pub length: usize,
    pub domain_count: u128,
    pub codomain_count: u128,
    pub bijective: bool,
}

#[derive(Serialize)]
pub struct WeqReport {
    pub weak_equivalence: bool,
    pub cycles_only: bool,
    pub component_matching: Vec<(usize, usize)>,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleLine>>,
}

impl Render for WeqReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "weak_equivalence: {}", self.weak_equivalence);
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        for (c, d) in &self.component_matching {
            let _ = writeln!(out, "  component {c} -> {d}");
        }
        for line in self.oracle.iter().flatten() {
            let _ = writeln!(
                out,
                "oracle n={}: {} -> {} {}",
                line.length,
                line.domain_count,
                line.codomain_count,
                if line.bijective { "bijective" } else { "not bijective" }
            );
        }
        out
    }
}

/// A result graph with the morphism relating it to the input.
#[derive(Serialize)]
pub struct SurgeryReport {
    pub graph: GraphJson,
    #[serde(rename = "morphism")]
    pub map: MorphismJson,
    #[serde(skip)]
    pub map_title: &'static str,
}

impl Render for SurgeryReport {
    fn text(&self) -> String {
        let mut out = String::new();
        render_graph(&mut out, &self.graph);
        render_map(&mut out, self.map_title, &self.map);
        out
    }
}

#[derive(Serialize)]
pub struct CofibrantReport {
    pub graph: GraphJson,
    pub embedding: MorphismJson,
    pub removed_arcs: Vec<String>,
}

impl Render for CofibrantReport {
    fn text(&self) -> String {
        let mut out = String::new();
        render_graph(&mut out, &self.graph);
        let _ = writeln!(out, "removed: {}", self.removed_arcs.join(" "));
        out
    }
}

#[derive(Serialize)]
pub struct Imbalance {
    pub node: String,
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum StepJson {
    GlueNodes { keep: String, merge: String },
    AttachCycle { at: String, nodes: Vec<String>, arcs: Vec<String> },
}

impl From<&AttachmentStep> for StepJson {
    fn from(s: &AttachmentStep) -> Self {
        match s {
            AttachmentStep::GlueNodes { keep, merge } => StepJson::GlueNodes {
                keep: keep.clone(),
                merge: merge.clone(),
            },
            AttachmentStep::AttachCycle { at, nodes, arcs } => StepJson::AttachCycle {
                at: at.clone(),
                nodes: nodes.clone(),
                arcs: arcs.clone(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub base_nodes: Vec<String>,
    pub base_arcs: Vec<String>,
    pub steps: Vec<StepJson>,
}

#[derive(Serialize)]
pub struct EulerJson {
    pub eulerian: bool,
    pub connected: bool,
    pub unbalanced: Vec<Imbalance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<WalkJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
}

impl Render for EulerJson {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "eulerian: {}", self.eulerian);
        let _ = writeln!(out, "connected: {}", self.connected);
        for u in &self.unbalanced {
            let _ = writeln!(out, "unbalanced: {} (in {}, out {})", u.node, u.in_degree, u.out_degree);
        }
        if let Some(c) = &self.cycle {
            let _ = writeln!(out, "cycle: {}", c.render());
        }
        if let Some(d) = &self.decomposition {
            let _ = writeln!(out, "base: {}", d.base_arcs.join(" "));
            for step in &d.steps {
                match step {
                    StepJson::GlueNodes { keep, merge } => {
                        let _ = writeln!(out, "  glue {merge} onto {keep}");
                    }
                    StepJson::AttachCycle { at, arcs, .. } => {
                        let _ = writeln!(out, "  attach at {at}: {}", arcs.join(" "));
                    }
                }
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct HomologyReport {
    pub h0_rank: usize,
    pub h1_rank: usize,
    pub component_count: usize,
    pub basis: Vec<IndexMap<String, i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_cycles: Option<Vec<IndexMap<String, i64>>>,
}

impl Render for HomologyReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "h0_rank: {}", self.h0_rank);
        let _ = writeln!(out, "h1_rank: {}", self.h1_rank);
        let _ = writeln!(out, "components: {}", self.component_count);
        for b in &self.basis {
            let _ = writeln!(out, "  basis: {}", chain_expression(b));
        }
        for c in self.positive_cycles.iter().flatten() {
            let _ = writeln!(out, "  positive: {}", chain_expression(c));
        }
        out
    }
}

#[derive(Serialize)]
pub struct CycleJson {
    pub multiplicity: u64,
    #[serde(flatten)]
    pub walk: WalkJson,
}

#[derive(Serialize)]
pub struct DecomposeReport {
    pub length: u64,
    pub cycles: Vec<CycleJson>,
}

impl Render for DecomposeReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "length: {}", self.length);
        let _ = writeln!(out, "cycles: {}", self.cycles.len());
        for c in &self.cycles {
            let _ = writeln!(out, "  {} x {}", c.multiplicity, c.walk.render());
        }
        out
    }
}

#[derive(Serialize)]
pub struct PostmanReport {
    pub n: usize,
    pub walk: WalkJson,
    pub extra: IndexMap<String, u64>,
}

impl Render for PostmanReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "walk: {}", self.walk.render());
        for (a, k) in &self.extra {
            let _ = writeln!(out, "  repeat {a}: {k}");
        }
        out
    }
}

#[derive(Serialize)]
pub struct ReflexiveWeqReport {
    pub weak_equivalence: bool,
    pub witness: Option<String>,
    pub n_max: usize,
    pub nondegenerate_bijection: bool,
}

impl Render for ReflexiveWeqReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "weak_equivalence: {}", self.weak_equivalence);
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        let _ = writeln!(out, "nondegenerate_bijection (n <= {}): {}", self.n_max, self.nondegenerate_bijection);
        out
    }
}

impl Render for GraphJson {
    fn text(&self) -> String {
        let mut out = String::new();
        render_graph(&mut out, self);
        out
    }
}

#[derive(Serialize)]
pub struct PageRankReport {
    pub scores: IndexMap<String, f64>,
    pub iterations: usize,
    pub residual: f64,
    pub connectivity: ConnectivityReport,
}

impl Render for PageRankReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for (x, s) in &self.scores {
            let _ = writeln!(out, "{x} {s:.12}");
        }
        let _ = writeln!(out, "iterations: {}", self.iterations);
        let _ = writeln!(out, "residual: {:e}", self.residual);
        let _ = writeln!(out, "irreducible: {}", self.connectivity.irreducible);
        out
    }
}

#[derive(Serialize)]
pub struct HomCountReport {
    pub length: usize,
    pub count: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walks: Option<Vec<WalkJson>>,
}

impl Render for HomCountReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "length: {}", self.length);
        let _ = writeln!(out, "count: {}", self.count);
        for w in self.walks.iter().flatten() {
            let _ = writeln!(out, "  {} @ {}", w.render(), w.base);
        }
        out
    }
}
