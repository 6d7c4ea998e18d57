use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{required_nodes, Node, WarehouseGraph};
use crate::error::{Error, Result};
use crate::model::{tour_length, Instance};
use crate::solution::Solution;
use crate::walk::walk_edges;

pub const DEFAULT_LIMIT: usize = 15;

/// Shortest-path distances between the required points (depot first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricClosure {
    pub points: Vec<Node>,
    pub dist: Vec<Vec<u64>>,
}

impl MetricClosure {
    pub fn build(instance: &Instance) -> Self {
        let graph = WarehouseGraph::build(instance);
        let points = required_nodes(instance);
        let dist = points
            .iter()
            .map(|p| {
                let (all, _) = dijkstra(&graph, graph.index[p]);
                points.iter().map(|q| all[graph.index[q]]).collect()
            })
            .collect();
        Self { points, dist }
    }
}

/// Distances and shortest-path predecessors from `source`.
fn dijkstra(graph: &WarehouseGraph, source: usize) -> (Vec<u64>, Vec<usize>) {
    let mut dist = vec![u64::MAX; graph.nodes.len()];
    let mut pred: Vec<usize> = (0..graph.nodes.len()).collect();
    let mut heap = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(u, w) in &graph.adjacency[v] {
            let nd = d + w;
            if nd < dist[u] {
                dist[u] = nd;
                pred[u] = v;
                heap.push(Reverse((nd, u)));
            }
        }
    }
    (dist, pred)
}

/// Length of the shortest closed walk from the depot through every pick,
/// by subset dynamic programming over the metric closure.
pub fn held_karp_opt(instance: &Instance, limit: usize) -> Result<u64> {
    let closure = MetricClosure::build(instance);
    Ok(subset_dp(&closure.dist, limit)?.0)
}

/// Optimal cost and visiting order of the required points (indices into
/// the closure, depot first and not repeated at the end), plus the number
/// of subset-state relaxations.
fn subset_dp(d: &[Vec<u64>], limit: usize) -> Result<(u64, Vec<usize>, u64)> {
    let r = d.len();
    if r > limit {
        return Err(Error::OracleGuard(format!("{r} required points exceed limit {limit}")));
    }
    if r == 1 {
        return Ok((0, vec![0], 0));
    }
    // subsets of points 1..r, bit t-1 for point t; best[mask][t] ends at t
    let k = r - 1;
    let full = (1usize << k) - 1;
    let mut best = vec![vec![u64::MAX; k]; full + 1];
    let mut parent = vec![vec![usize::MAX; k]; full + 1];
    let mut relaxations = 0u64;
    for t in 0..k {
        best[1 << t][t] = d[0][t + 1];
    }
    for mask in 1..=full {
        for last in 0..k {
            let cur = best[mask][last];
            if cur == u64::MAX || mask & (1 << last) == 0 {
                continue;
            }
            for next in 0..k {
                if mask & (1 << next) != 0 {
                    continue;
                }
                relaxations += 1;
                let nm = mask | (1 << next);
                let cand = cur + d[last + 1][next + 1];
                if cand < best[nm][next] {
                    best[nm][next] = cand;
                    parent[nm][next] = last;
                }
            }
        }
    }
    let (cost, mut last) = (0..k).map(|t| (best[full][t] + d[t + 1][0], t)).min().expect("at least one pick");
    let mut order = Vec::with_capacity(r);
    let mut mask = full;
    loop {
        order.push(last + 1);
        let prev = parent[mask][last];
        mask &= !(1 << last);
        if mask == 0 {
            break;
        }
        last = prev;
    }
    order.push(0);
    order.reverse();
    Ok((cost, order, relaxations))
}

/// A full solution from the metric-closure tour: consecutive required points
/// are joined by shortest paths. `stages` is zero and `expansions` counts
/// subset-state relaxations.
pub fn held_karp_solution(instance: &Instance, limit: usize) -> Result<Solution> {
    let graph = WarehouseGraph::build(instance);
    let points = required_nodes(instance);
    if points.len() > limit {
        return Err(Error::OracleGuard(format!("{} required points exceed limit {limit}", points.len())));
    }
    let trees: Vec<(Vec<u64>, Vec<usize>)> = points.iter().map(|p| dijkstra(&graph, graph.index[p])).collect();
    let dist: Vec<Vec<u64>> =
        trees.iter().map(|(all, _)| points.iter().map(|q| all[graph.index[q]]).collect()).collect();
    let (cost, order, expansions) = subset_dp(&dist, limit)?;

    let mut walk: Vec<Node> = vec![points[0]];
    let mut cycle = order.clone();
    cycle.push(0);
    for pair in cycle.windows(2) {
        // walk the predecessor tree rooted at the target back to the source
        let (_, pred) = &trees[pair[1]];
        let mut v = graph.index[&points[pair[0]]];
        let target = graph.index[&points[pair[1]]];
        while v != target {
            v = pred[v];
            walk.push(graph.nodes[v]);
        }
    }
    let edges = walk_edges(instance, &walk).expect("shortest paths follow graph edges");
    debug_assert_eq!(tour_length(instance, &edges)?, cost);
    let m = instance.layout().aisles();
    Ok(Solution {
        cost,
        edges,
        vertical_choices: vec![Vec::new(); m],
        horizontal_choices: vec![Vec::new(); m.saturating_sub(1)],
        walk,
        stages: 0,
        expansions,
        peak_states: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate_instance, DepotLocation, PickLocation, WarehouseLayout};

    #[test]
    fn out_and_back() {
        let inst = Instance::new(
            WarehouseLayout::new(3, 2, 5, 10).unwrap(),
            DepotLocation { aisle: 1, cross_aisle: 1 },
            vec![PickLocation { aisle: 2, subaisle: 1, offset: 4 }],
        )
        .unwrap();
        assert_eq!(held_karp_opt(&inst, DEFAULT_LIMIT).unwrap(), 2 * (5 + 4));
    }

    #[test]
    fn closure_is_a_metric() {
        let inst = generate_instance(4, 3, 3, 7, 8, 5).unwrap();
        let c = MetricClosure::build(&inst);
        let r = c.points.len();
        for a in 0..r {
            assert_eq!(c.dist[a][a], 0);
            for b in 0..r {
                assert_eq!(c.dist[a][b], c.dist[b][a]);
                for x in 0..r {
                    assert!(c.dist[a][b] <= c.dist[a][x] + c.dist[x][b]);
                }
            }
        }
    }

    #[test]
    fn mirror_and_limit() {
        let inst = generate_instance(3, 3, 4, 9, 7, 17).unwrap();
        assert_eq!(
            held_karp_opt(&inst, DEFAULT_LIMIT).unwrap(),
            held_karp_opt(&inst.mirrored(), DEFAULT_LIMIT).unwrap()
        );
        assert!(held_karp_opt(&inst, 4).is_err());
    }

    #[test]
    fn solution_walk_matches_cost() {
        for seed in 0..40 {
            let inst = generate_instance(1 + (seed % 4) as usize, 2 + (seed % 2) as usize, 3, 8, (seed % 8) as usize, seed)
                .unwrap();
            let sol = held_karp_solution(&inst, DEFAULT_LIMIT).unwrap();
            assert_eq!(sol.cost, held_karp_opt(&inst, DEFAULT_LIMIT).unwrap());
            assert_eq!(tour_length(&inst, &sol.edges).unwrap(), sol.cost);
            assert!(crate::oracle::validate_tour_subgraph(&inst, &sol.edges).is_valid());
            assert!(sol.edges.max_multiplicity() <= 2);
            assert_eq!(sol.walk.first(), sol.walk.last());
        }
    }

    #[test]
    fn reduced_example_is_optimal() {
        let inst = Instance::new(
            WarehouseLayout::new(3, 2, 5, 10).unwrap(),
            DepotLocation { aisle: 1, cross_aisle: 1 },
            vec![
                PickLocation { aisle: 1, subaisle: 1, offset: 3 },
                PickLocation { aisle: 2, subaisle: 1, offset: 7 },
                PickLocation { aisle: 3, subaisle: 1, offset: 2 },
            ],
        )
        .unwrap();
        assert_eq!(held_karp_opt(&inst, DEFAULT_LIMIT).unwrap(), 44);
    }
}
