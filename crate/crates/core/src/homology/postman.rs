use super::{concatenate_cycles, decompose_positive_chain, fundamental_chain, min_cost_flow, FlowArc, HomologyError};
use crate::graph::DirectedGraph;
use crate::scc::is_strongly_connected;
use crate::walk::ClosedWalk;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringWalk {
    pub walk: ClosedWalk,
    /// Length of the shortest closed walk through every arc.
    pub n_of_x: usize,
    /// Extra traversals per arc on top of the single mandatory one.
    pub extra: Vec<u64>,
}

/// Directed Chinese postman.
///
/// Nodes with more incoming than outgoing arcs need extra departures, so one
/// unit of flow leaves each of them per surplus arrival and ends at a node
/// with an outgoing surplus. Adding the optimal flow to the fundamental chain
/// yields a balanced positive chain whose spliced cycle decomposition is the
/// covering walk.
pub fn minimal_covering_walk(g: &DirectedGraph) -> Result<CoveringWalk, HomologyError> {
    if g.arc_count() == 0 {
        return Err(HomologyError::NoArcs);
    }
    if !is_strongly_connected(g)? {
        return Err(HomologyError::NotStronglyConnected);
    }
    let supply: Vec<i64> = g
        .nodes()
        .map(|x| g.in_degree(x) as i64 - g.out_degree(x) as i64)
        .collect();
    let arcs: Vec<FlowArc> = g
        .arcs()
        .map(|a| FlowArc {
            from: g.source(a).0,
            to: g.target(a).0,
            capacity: None,
            cost: 1,
        })
        .collect();
    let solution = min_cost_flow(g.node_count(), &arcs, &supply)?;

    let mut chain = fundamental_chain(g);
    for (c, &f) in chain.coefficients_mut().iter_mut().zip(&solution.flow) {
        *c += f as i64;
    }
    let decomposition = decompose_positive_chain(&chain)?;
    let walk = concatenate_cycles(g, &decomposition.expanded())?;
    debug_assert_eq!(walk.len() as i64, g.arc_count() as i64 + solution.cost);
    Ok(CoveringWalk {
        n_of_x: walk.len(),
        walk,
        extra: solution.flow,
    })
}
