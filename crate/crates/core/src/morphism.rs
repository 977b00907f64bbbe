//! Graph morphisms: a node map and an arc map commuting with source and target.

use std::fmt;

use crate::graph::{ArcIx, GraphError, NodeIx, SharedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Source,
    Target,
}

/// One failed commuting square: `endpoint(arc_map(arc))` should be `expected`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub arc: ArcIx,
    pub endpoint: Endpoint,
    pub expected: NodeIx,
    pub found: NodeIx,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.endpoint {
            Endpoint::Source => "source",
            Endpoint::Target => "target",
        };
        write!(
            f,
            "arc {} lands on an arc whose {side} is {} instead of {}",
            self.arc, self.found, self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    domain: SharedGraph,
    codomain: SharedGraph,
    node_map: Vec<NodeIx>,
    arc_map: Vec<ArcIx>,
}

impl GraphMorphism {
    /// Wraps total maps; commutation is checked separately by [`GraphMorphism::validate`].
    pub fn new(
        domain: SharedGraph,
        codomain: SharedGraph,
        node_map: Vec<NodeIx>,
        arc_map: Vec<ArcIx>,
    ) -> Result<Self, GraphError> {
        if node_map.len() != domain.node_count() {
            return Err(GraphError::PartialMap(format!(
                "node map has {} entries for {} nodes",
                node_map.len(),
                domain.node_count()
            )));
        }
        if arc_map.len() != domain.arc_count() {
            return Err(GraphError::PartialMap(format!(
                "arc map has {} entries for {} arcs",
                arc_map.len(),
                domain.arc_count()
            )));
        }
        if let Some(bad) = node_map.iter().find(|x| x.0 >= codomain.node_count()) {
            return Err(GraphError::PartialMap(format!("node {bad} outside codomain")));
        }
        if let Some(bad) = arc_map.iter().find(|a| a.0 >= codomain.arc_count()) {
            return Err(GraphError::PartialMap(format!("arc {bad} outside codomain")));
        }
        Ok(Self {
            domain,
            codomain,
            node_map,
            arc_map,
        })
    }

    /// Builds a morphism from id-to-id maps; every domain node and arc must be mapped.
    pub fn from_ids<'a>(
        domain: SharedGraph,
        codomain: SharedGraph,
        nodes: impl IntoIterator<Item = (&'a str, &'a str)>,
        arcs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, GraphError> {
        let mut node_map = vec![None; domain.node_count()];
        for (from, to) in nodes {
            node_map[domain.node(from)?.0] = Some(codomain.node(to)?);
        }
        let mut arc_map = vec![None; domain.arc_count()];
        for (from, to) in arcs {
            arc_map[domain.arc(from)?.0] = Some(codomain.arc(to)?);
        }
        let node_map = node_map
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| GraphError::PartialMap(format!("node `{}` unmapped", domain.node_id(NodeIx(i))))))
            .collect::<Result<Vec<_>, _>>()?;
        let arc_map = arc_map
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| GraphError::PartialMap(format!("arc `{}` unmapped", domain.arc_id(ArcIx(i))))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(domain, codomain, node_map, arc_map)
    }

    pub fn identity(g: &SharedGraph) -> Self {
        Self {
            domain: g.clone(),
            codomain: g.clone(),
            node_map: g.nodes().collect(),
            arc_map: g.arcs().collect(),
        }
    }

    pub fn domain(&self) -> &SharedGraph {
        &self.domain
    }

    pub fn codomain(&self) -> &SharedGraph {
        &self.codomain
    }

    pub fn node_map(&self) -> &[NodeIx] {
        &self.node_map
    }

    pub fn arc_map(&self) -> &[ArcIx] {
        &self.arc_map
    }

    pub fn map_node(&self, x: NodeIx) -> NodeIx {
        self.node_map[x.0]
    }

    pub fn map_arc(&self, a: ArcIx) -> ArcIx {
        self.arc_map[a.0]
    }

    /// All failed commuting squares; empty iff the morphism is valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for a in self.domain.arcs() {
            let image = self.map_arc(a);
            let checks = [
                (Endpoint::Source, self.map_node(self.domain.source(a)), self.codomain.source(image)),
                (Endpoint::Target, self.map_node(self.domain.target(a)), self.codomain.target(image)),
            ];
            for (endpoint, expected, found) in checks {
                if expected != found {
                    out.push(Violation {
                        arc: a,
                        endpoint,
                        expected,
                        found,
                    });
                }
            }
        }
        out
    }

    pub fn validate(&self) -> bool {
        self.violations().is_empty()
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &GraphMorphism) -> Result<GraphMorphism, GraphError> {
        if !std::sync::Arc::ptr_eq(&self.codomain, &then.domain) && *self.codomain != *then.domain {
            return Err(GraphError::NotComposable);
        }
        Ok(GraphMorphism {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            node_map: self.node_map.iter().map(|&x| then.map_node(x)).collect(),
            arc_map: self.arc_map.iter().map(|&a| then.map_arc(a)).collect(),
        })
    }

    pub fn is_injective_on_nodes(&self) -> bool {
        is_injective(self.node_map.iter().map(|x| x.0), self.codomain.node_count())
    }

    pub fn is_injective_on_arcs(&self) -> bool {
        is_injective(self.arc_map.iter().map(|a| a.0), self.codomain.arc_count())
    }

    pub fn is_surjective_on_nodes(&self) -> bool {
        is_surjective(self.node_map.iter().map(|x| x.0), self.codomain.node_count())
    }

    pub fn is_surjective_on_arcs(&self) -> bool {
        is_surjective(self.arc_map.iter().map(|a| a.0), self.codomain.arc_count())
    }

    /// Bijective on both nodes and arcs.
    pub fn is_isomorphism(&self) -> bool {
        self.domain.node_count() == self.codomain.node_count()
            && self.domain.arc_count() == self.codomain.arc_count()
            && self.is_injective_on_nodes()
            && self.is_injective_on_arcs()
    }
}

fn is_injective(values: impl Iterator<Item = usize>, range: usize) -> bool {
    let mut seen = vec![false; range];
    for v in values {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    true
}

fn is_surjective(values: impl Iterator<Item = usize>, range: usize) -> bool {
    let mut seen = vec![false; range];
    for v in values {
        seen[v] = true;
    }
    seen.into_iter().all(|s| s)
}

/// Checks both commuting squares of a morphism between two graphs.
pub fn validate_morphism(m: &GraphMorphism) -> (bool, Vec<Violation>) {
    let violations = m.violations();
    (violations.is_empty(), violations)
}
