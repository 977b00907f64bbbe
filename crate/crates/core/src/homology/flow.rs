//! Min-cost flow by successive shortest paths (Dijkstra with potentials).
//!
//! Costs must be nonnegative, so zero initial potentials are feasible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::HomologyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    /// `None` means unbounded.
    pub capacity: Option<u64>,
    pub cost: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSolution {
    /// Flow on each input arc, in input order.
    pub flow: Vec<u64>,
    pub cost: i64,
}

struct Edge {
    to: usize,
    cap: u64,
    cost: i64,
    rev: usize,
}

/// Sends `supply[v]` units out of every node with positive supply and absorbs
/// `−supply[v]` at every node with negative supply. Supplies must sum to 0.
pub fn min_cost_flow(node_count: usize, arcs: &[FlowArc], supply: &[i64]) -> Result<FlowSolution, HomologyError> {
    assert_eq!(supply.len(), node_count, "one supply per node");
    if supply.iter().sum::<i64>() != 0 {
        return Err(HomologyError::InfeasibleFlow);
    }
    let source = node_count;
    let sink = node_count + 1;
    let total = node_count + 2;
    let mut adj: Vec<Vec<Edge>> = (0..total).map(|_| Vec::new()).collect();
    let mut handles = Vec::with_capacity(arcs.len());

    let push_edge = |adj: &mut Vec<Vec<Edge>>, from: usize, to: usize, cap: u64, cost: i64| {
        let (rf, rt) = (adj[to].len() + usize::from(from == to), adj[from].len());
        adj[from].push(Edge { to, cap, cost, rev: rf });
        adj[to].push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
            rev: rt,
        });
        (from, rt)
    };

    let demand: u64 = supply.iter().filter(|&&s| s > 0).map(|&s| s as u64).sum();
    for arc in arcs {
        assert!(arc.cost >= 0, "costs must be nonnegative");
        let cap = arc.capacity.unwrap_or(demand);
        handles.push(push_edge(&mut adj, arc.from, arc.to, cap, arc.cost));
    }
    for (v, &s) in supply.iter().enumerate() {
        if s > 0 {
            push_edge(&mut adj, source, v, s as u64, 0);
        } else if s < 0 {
            push_edge(&mut adj, v, sink, (-s) as u64, 0);
        }
    }

    let mut potential = vec![0i64; total];
    let mut sent = 0u64;
    let mut cost = 0i64;
    while sent < demand {
        let mut dist = vec![i64::MAX; total];
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; total];
        dist[source] = 0;
        let mut heap = BinaryHeap::from([Reverse((0i64, source))]);
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for (k, e) in adj[v].iter().enumerate() {
                if e.cap == 0 {
                    continue;
                }
                let nd = d + e.cost + potential[v] - potential[e.to];
                if nd < dist[e.to] {
                    dist[e.to] = nd;
                    prev[e.to] = Some((v, k));
                    heap.push(Reverse((nd, e.to)));
                }
            }
        }
        if dist[sink] == i64::MAX {
            return Err(HomologyError::InfeasibleFlow);
        }
        for v in 0..total {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }
        let mut push = demand - sent;
        let mut v = sink;
        while let Some((u, k)) = prev[v] {
            push = push.min(adj[u][k].cap);
            v = u;
        }
        let mut v = sink;
        while let Some((u, k)) = prev[v] {
            adj[u][k].cap -= push;
            let rev = adj[u][k].rev;
            adj[v][rev].cap += push;
            cost += adj[u][k].cost * push as i64;
            v = u;
        }
        sent += push;
    }

    let flow = handles
        .iter()
        .map(|&(from, k)| {
            let e = &adj[from][k];
            adj[e.to][e.rev].cap
        })
        .collect();
    Ok(FlowSolution { flow, cost })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(from: usize, to: usize, cost: i64) -> FlowArc {
        FlowArc {
            from,
            to,
            capacity: None,
            cost,
        }
    }

    #[test]
    fn picks_the_cheaper_route() {
        let arcs = [arc(0, 1, 1), arc(1, 2, 1), arc(0, 2, 5)];
        let s = min_cost_flow(3, &arcs, &[2, 0, -2]).unwrap();
        assert_eq!(s.flow, vec![2, 2, 0]);
        assert_eq!(s.cost, 4);
    }

    #[test]
    fn respects_capacities() {
        let mut arcs = [arc(0, 1, 1), arc(1, 2, 1), arc(0, 2, 5)];
        arcs[0].capacity = Some(1);
        let s = min_cost_flow(3, &arcs, &[2, 0, -2]).unwrap();
        assert_eq!(s.flow, vec![1, 1, 1]);
        assert_eq!(s.cost, 7);
    }

    #[test]
    fn loops_and_zero_supply() {
        let arcs = [arc(0, 0, 1), arc(0, 1, 1)];
        let s = min_cost_flow(2, &arcs, &[0, 0]).unwrap();
        assert_eq!(s, FlowSolution { flow: vec![0, 0], cost: 0 });
    }

    #[test]
    fn infeasible() {
        let arcs = [arc(1, 0, 1)];
        assert_eq!(min_cost_flow(2, &arcs, &[1, -1]), Err(HomologyError::InfeasibleFlow));
        assert_eq!(min_cost_flow(2, &arcs, &[1, 0]), Err(HomologyError::InfeasibleFlow));
    }
}
