//! Random-walk ranking on a directed multigraph.
//!
//! The transition matrix is column-stochastic: column `j` spreads the mass of
//! node `j` over its out-arcs by multiplicity. Nodes without out-arcs get a
//! uniform column. Ranks are the fixed vector of the damped matrix
//! `d·P + (1−d)/n·J`, found by power iteration with fixed summation order.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{DirectedGraph, GraphError};
use crate::scc::scc_decompose;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PageRankError {
    #[error("damping must lie strictly between 0 and 1, got {0}")]
    InvalidDamping(f64),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarkovMatrix {
    order: usize,
    /// Row-major; entry `(i, j)` is the probability of moving from `j` to `i`.
    entries: Vec<f64>,
    dangling: Vec<bool>,
}

impl MarkovMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    /// Columns that were replaced by the uniform distribution.
    pub fn dangling(&self) -> &[bool] {
        &self.dangling
    }

    pub fn is_column_stochastic(&self, tol: f64) -> bool {
        (0..self.order).all(|j| {
            let sum: f64 = (0..self.order).map(|i| self.get(i, j)).sum();
            (sum - 1.0).abs() <= tol && (0..self.order).all(|i| self.get(i, j) >= 0.0)
        })
    }

    /// `d·P·r + (1−d)/n` for a probability vector `r`.
    pub fn damped_apply(&self, damping: f64, r: &[f64]) -> Vec<f64> {
        let n = self.order;
        let teleport = (1.0 - damping) / n as f64 * r.iter().sum::<f64>();
        (0..n)
            .map(|i| {
                let row = &self.entries[i * n..(i + 1) * n];
                damping * row.iter().zip(r).map(|(p, x)| p * x).sum::<f64>() + teleport
            })
            .collect()
    }
}

pub fn markov_from_graph(g: &DirectedGraph) -> Result<MarkovMatrix, PageRankError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph.into());
    }
    let n = g.node_count();
    let mut entries = vec![0.0; n * n];
    let mut dangling = vec![false; n];
    for j in g.nodes() {
        let out = g.out_arcs(j);
        if out.is_empty() {
            dangling[j.0] = true;
            for i in 0..n {
                entries[i * n + j.0] = 1.0 / n as f64;
            }
            continue;
        }
        let w = 1.0 / out.len() as f64;
        for &a in out {
            entries[g.target(a).0 * n + j.0] += w;
        }
    }
    Ok(MarkovMatrix { order: n, entries, dangling })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankVector {
    /// `(node id, score)` in node order.
    pub scores: Vec<(String, f64)>,
    pub iterations: usize,
    pub residual: f64,
}

impl RankVector {
    pub fn values(&self) -> Vec<f64> {
        self.scores.iter().map(|(_, s)| *s).collect()
    }
}

pub fn pagerank(g: &DirectedGraph, params: PageRankParams) -> Result<RankVector, PageRankError> {
    if !(params.damping > 0.0 && params.damping < 1.0) {
        return Err(PageRankError::InvalidDamping(params.damping));
    }
    if params.tol.is_nan() || params.tol <= 0.0 {
        return Err(PageRankError::InvalidTolerance(params.tol));
    }
    let p = markov_from_graph(g)?;
    let n = p.order();
    let mut r = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=params.max_iter {
        let next = p.damped_apply(params.damping, &r);
        residual = next.iter().zip(&r).map(|(a, b)| (a - b).abs()).sum();
        r = next;
        if residual < params.tol {
            // renormalize away accumulated rounding
            let total: f64 = r.iter().sum();
            r.iter_mut().for_each(|x| *x /= total);
            return Ok(RankVector {
                scores: g.node_ids().iter().cloned().zip(r).collect(),
                iterations: iteration,
                residual,
            });
        }
    }
    Err(PageRankError::NoConvergence {
        iterations: params.max_iter,
        residual,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConnectivityReport {
    pub component_count: usize,
    pub largest_component: usize,
    pub largest_fraction: f64,
    pub irreducible: bool,
}

pub fn connectivity_report(g: &DirectedGraph) -> ConnectivityReport {
    let scc = scc_decompose(g);
    let largest = scc.components.iter().map(Vec::len).max().unwrap_or(0);
    ConnectivityReport {
        component_count: scc.len(),
        largest_component: largest,
        largest_fraction: if g.is_empty() { 0.0 } else { largest as f64 / g.node_count() as f64 },
        irreducible: scc.len() == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn markov_examples() {
        let c3 = markov_from_graph(&DirectedGraph::standard_cycle(3)).unwrap();
        assert_eq!(c3.get(1, 0), 1.0);
        assert_eq!(c3.get(0, 2), 1.0);
        assert_eq!(c3.get(0, 0), 0.0);

        let p2 = markov_from_graph(&DirectedGraph::standard_path(2)).unwrap();
        assert_eq!((p2.get(0, 1), p2.get(1, 1)), (0.5, 0.5));
        assert_eq!(p2.dangling(), &[false, true]);

        let g = DirectedGraph::build(["x", "y", "z"], [("a", "x", "y"), ("b", "x", "y"), ("c", "x", "z")]).unwrap();
        let m = markov_from_graph(&g).unwrap();
        assert!(close(m.get(1, 0), 2.0 / 3.0, 1e-15));
        assert!(close(m.get(2, 0), 1.0 / 3.0, 1e-15));
        assert!(m.is_column_stochastic(1e-12));

        assert!(matches!(
            markov_from_graph(&DirectedGraph::empty()),
            Err(PageRankError::Graph(GraphError::EmptyGraph))
        ));
    }

    #[test]
    fn pagerank_examples() {
        let r = pagerank(&DirectedGraph::standard_cycle(3), PageRankParams::default()).unwrap();
        assert!(r.values().iter().all(|&s| close(s, 1.0 / 3.0, 1e-12)));

        let r = pagerank(&DirectedGraph::standard_cycle(1), PageRankParams::default()).unwrap();
        assert_eq!(r.values(), vec![1.0]);
    }

    #[test]
    fn star_matches_the_exact_stationary_vector() {
        let g = DirectedGraph::build(
            ["hub", "a", "b"],
            [("e0", "a", "hub"), ("e1", "b", "hub"), ("e2", "hub", "a")],
        )
        .unwrap();
        let r = pagerank(&g, PageRankParams::default()).unwrap().values();
        // solved exactly: hub 18/37, a 343/740, b 1/20
        assert!(close(r[0], 18.0 / 37.0, 1e-10));
        assert!(close(r[1], 343.0 / 740.0, 1e-10));
        assert!(close(r[2], 1.0 / 20.0, 1e-10));
        assert!(r[0] > r[1] && r[0] > r[2]);
    }

    #[test]
    fn parameter_validation() {
        let c3 = DirectedGraph::standard_cycle(3);
        for d in [0.0, 1.0, -0.5, f64::NAN] {
            let params = PageRankParams { damping: d, ..Default::default() };
            assert!(matches!(pagerank(&c3, params), Err(PageRankError::InvalidDamping(_))));
        }
        let params = PageRankParams { tol: 0.0, ..Default::default() };
        assert!(matches!(pagerank(&c3, params), Err(PageRankError::InvalidTolerance(_))));
        let params = PageRankParams {
            max_iter: 1,
            ..Default::default()
        };
        let p3 = DirectedGraph::standard_path(3);
        assert!(matches!(pagerank(&p3, params), Err(PageRankError::NoConvergence { iterations: 1, .. })));
    }

    #[test]
    fn connectivity_examples() {
        let r = connectivity_report(&DirectedGraph::standard_cycle(6));
        assert_eq!((r.largest_fraction, r.irreducible), (1.0, true));

        let r = connectivity_report(&DirectedGraph::standard_path(5));
        assert!(close(r.largest_fraction, 0.2, 1e-15));
        assert!(!r.irreducible);

        let g = DirectedGraph::from_index_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]);
        let r = connectivity_report(&g);
        assert!(close(r.largest_fraction, 0.8, 1e-15));
        assert_eq!(r.component_count, 2);
    }
}
