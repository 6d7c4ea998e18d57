//! Independent checks: tour-subgraph validation, exact shortest closed walks
//! via the metric closure, and exhaustive configuration enumeration.

mod brute;
mod held_karp;
mod validate;

pub use brute::{brute_force_config_opt, enumeration_size, ENUMERATION_GUARD};
pub use held_karp::{held_karp_opt, held_karp_solution, MetricClosure, DEFAULT_LIMIT};
pub use validate::{validate_tour_subgraph, Verdict, Violation};

use std::collections::BTreeMap;

use crate::model::{aisle_points, Instance, PointKind};

/// A node of the discretized warehouse graph: `(aisle, position)`.
pub type Node = (usize, u64);

/// Aisle points of every aisle joined by their vertical segments and the
/// horizontal cross-aisle segments.
pub(crate) struct WarehouseGraph {
    pub nodes: Vec<Node>,
    pub index: BTreeMap<Node, usize>,
    pub adjacency: Vec<Vec<(usize, u64)>>,
}

impl WarehouseGraph {
    pub fn build(instance: &Instance) -> Self {
        let layout = instance.layout();
        let mut nodes = Vec::new();
        let mut index = BTreeMap::new();
        let mut adjacency: Vec<Vec<(usize, u64)>> = Vec::new();
        for aisle in 1..=layout.aisles() {
            let points = aisle_points(instance, aisle);
            for p in &points {
                index.insert((aisle, p.position), nodes.len());
                nodes.push((aisle, p.position));
                adjacency.push(Vec::new());
            }
            for w in points.windows(2) {
                let a = index[&(aisle, w[0].position)];
                let b = index[&(aisle, w[1].position)];
                let d = w[1].position - w[0].position;
                adjacency[a].push((b, d));
                adjacency[b].push((a, d));
            }
        }
        for g in 1..layout.aisles() {
            for j in 1..=layout.cross_aisles() {
                let pos = layout.vertex_position(j);
                let a = index[&(g, pos)];
                let b = index[&(g + 1, pos)];
                adjacency[a].push((b, layout.aisle_pitch()));
                adjacency[b].push((a, layout.aisle_pitch()));
            }
        }
        Self { nodes, index, adjacency }
    }
}

/// Depot followed by every pick, as graph nodes.
pub(crate) fn required_nodes(instance: &Instance) -> Vec<Node> {
    let mut out = vec![(instance.depot().aisle, instance.depot_position())];
    for aisle in 1..=instance.layout().aisles() {
        for p in aisle_points(instance, aisle) {
            if p.kind == PointKind::Pick {
                out.push((aisle, p.position));
            }
        }
    }
    out
}
