//! Euler circuits over tour subgraphs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{EdgeMultiset, Instance};
use crate::oracle::validate_tour_subgraph;

/// A closed walk from the depot that uses every edge of `edges` exactly its
/// multiplicity, as a sequence of `(aisle, position)` points.
pub fn extract_walk(instance: &Instance, edges: &EdgeMultiset) -> Result<Vec<(usize, u64)>> {
    let verdict = validate_tour_subgraph(instance, edges);
    if !verdict.is_valid() {
        return Err(Error::NotTourSubgraph(verdict.to_string()));
    }
    let depot = (instance.depot().aisle, instance.depot_position());
    let layout = instance.layout();

    let mut ids: BTreeMap<(usize, u64), usize> = BTreeMap::new();
    let mut nodes: Vec<(usize, u64)> = Vec::new();
    let mut id = |node: (usize, u64), nodes: &mut Vec<(usize, u64)>| {
        *ids.entry(node).or_insert_with(|| {
            nodes.push(node);
            nodes.len() - 1
        })
    };
    let start = id(depot, &mut nodes);
    let mut ends: Vec<(usize, usize)> = Vec::new();
    for ((a, lo, hi), m) in edges.vertical() {
        let (u, v) = (id((a, lo), &mut nodes), id((a, hi), &mut nodes));
        ends.extend(std::iter::repeat_n((u, v), m as usize));
    }
    for ((g, j), m) in edges.horizontal() {
        let pos = layout.vertex_position(j);
        let (u, v) = (id((g, pos), &mut nodes), id((g + 1, pos), &mut nodes));
        ends.extend(std::iter::repeat_n((u, v), m as usize));
    }

    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes.len()];
    for (e, &(u, v)) in ends.iter().enumerate() {
        adjacency[u].push((v, e));
        adjacency[v].push((u, e));
    }
    // pop from the back, so reverse to walk edges in insertion order
    for adj in &mut adjacency {
        adj.reverse();
    }

    let mut used = vec![false; ends.len()];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(ends.len() + 1);
    while let Some(&v) = stack.last() {
        let mut advanced = false;
        while let Some((u, e)) = adjacency[v].pop() {
            if !used[e] {
                used[e] = true;
                stack.push(u);
                advanced = true;
                break;
            }
        }
        if !advanced {
            circuit.push(nodes[v]);
            stack.pop();
        }
    }
    circuit.reverse();
    Ok(circuit)
}

/// Edge multiset traversed by a walk; `None` if consecutive points are not
/// adjacent in the warehouse graph.
pub fn walk_edges(instance: &Instance, walk: &[(usize, u64)]) -> Option<EdgeMultiset> {
    let layout = instance.layout();
    let mut edges = EdgeMultiset::new();
    for w in walk.windows(2) {
        let ((a1, p1), (a2, p2)) = (w[0], w[1]);
        if a1 == a2 && p1 != p2 {
            edges.add_vertical(a1, p1.min(p2), p1.max(p2), 1);
        } else if p1 == p2 && a1.abs_diff(a2) == 1 && p1 % layout.subaisle_height() == 0 {
            let j = (p1 / layout.subaisle_height()) as usize + 1;
            edges.add_horizontal(a1.min(a2), j, 1);
        } else {
            return None;
        }
    }
    Some(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{tour_length, DepotLocation, PickLocation, WarehouseLayout};

    fn inst(m: usize, picks: &[(usize, u64)]) -> Instance {
        Instance::new(
            WarehouseLayout::new(m, 2, 5, 10).unwrap(),
            DepotLocation { aisle: 1, cross_aisle: 1 },
            picks.iter().map(|&(aisle, offset)| PickLocation { aisle, subaisle: 1, offset }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn out_and_back() {
        let i = inst(1, &[(1, 4)]);
        let mut e = EdgeMultiset::new();
        e.add_vertical(1, 0, 4, 2);
        assert_eq!(extract_walk(&i, &e).unwrap(), vec![(1, 0), (1, 4), (1, 0)]);
    }

    #[test]
    fn rectangle() {
        let i = inst(2, &[]);
        let mut e = EdgeMultiset::new();
        e.add_vertical(1, 0, 10, 1);
        e.add_vertical(2, 0, 10, 1);
        e.add_horizontal(1, 1, 1);
        e.add_horizontal(1, 2, 1);
        let walk = extract_walk(&i, &e).unwrap();
        assert_eq!(walk.len(), 5);
        assert_eq!(walk.first(), Some(&(1, 0)));
        assert_eq!(walk.last(), Some(&(1, 0)));
        assert_eq!(walk_edges(&i, &walk).unwrap(), e);
        assert_eq!(tour_length(&i, &walk_edges(&i, &walk).unwrap()).unwrap(), 30);
    }

    #[test]
    fn empty_walk_stays_at_depot() {
        assert_eq!(extract_walk(&inst(2, &[]), &EdgeMultiset::new()).unwrap(), vec![(1, 0)]);
    }

    #[test]
    fn rejects_invalid_subgraph() {
        let mut e = EdgeMultiset::new();
        e.add_vertical(1, 0, 4, 1);
        assert!(matches!(extract_walk(&inst(1, &[(1, 4)]), &e), Err(Error::NotTourSubgraph(_))));
    }
}
