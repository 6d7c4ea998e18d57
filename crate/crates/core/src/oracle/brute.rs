use crate::config::{config_edges, subaisle_options, vertices, Segment};
use crate::error::{Error, Result};
use crate::model::{aisle_points, EdgeMultiset, Instance, PointKind};

use super::validate_tour_subgraph;

/// Largest assignment space the enumeration oracle will walk.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

struct Slot {
    /// Candidate `(edges, cost)` per option.
    options: Vec<(EdgeMultiset, u64)>,
}

fn slots(instance: &Instance) -> Result<Vec<Slot>> {
    let layout = instance.layout();
    let mut out = Vec::new();
    for aisle in 1..=layout.aisles() {
        let points = aisle_points(instance, aisle);
        let verts = vertices(&points);
        for w in verts.windows(2) {
            let required = points
                .iter()
                .filter(|p| p.kind == PointKind::Pick && p.position > w[0].1 && p.position < w[1].1)
                .map(|p| p.position)
                .collect();
            let seg = Segment { aisle, bottom: w[0].0, top: w[1].0, lo: w[0].1, hi: w[1].1, required };
            let options = subaisle_options(&seg, true)
                .into_iter()
                .map(|c| config_edges(c, &seg, &points))
                .collect::<Result<Vec<_>>>()?;
            out.push(Slot { options });
        }
    }
    for g in 1..layout.aisles() {
        for j in 1..=layout.cross_aisles() {
            let options = (0..=2u32)
                .map(|mult| {
                    let mut e = EdgeMultiset::new();
                    e.add_horizontal(g, j, mult);
                    (e, mult as u64 * layout.aisle_pitch())
                })
                .collect();
            out.push(Slot { options });
        }
    }
    Ok(out)
}

/// Number of assignments [`brute_force_config_opt`] would enumerate.
pub fn enumeration_size(instance: &Instance) -> Result<u128> {
    Ok(slots(instance)?.iter().map(|s| s.options.len() as u128).product())
}

/// Minimum tour length over every assignment of a configuration to each
/// subaisle and a count in `{0, 1, 2}` to each cross-aisle segment, keeping
/// only assignments that form a tour subgraph. Returns the length and the
/// first optimal assignment's edges.
pub fn brute_force_config_opt(instance: &Instance) -> Result<(u64, EdgeMultiset)> {
    let slots = slots(instance)?;
    let size: u128 = slots.iter().map(|s| s.options.len() as u128).product();
    if size > ENUMERATION_GUARD {
        return Err(Error::OracleGuard(format!("{size} assignments exceed guard {ENUMERATION_GUARD}")));
    }
    let mut best: Option<(u64, EdgeMultiset)> = None;
    let mut digits = vec![0usize; slots.len()];
    loop {
        let cost: u64 = slots.iter().zip(&digits).map(|(s, &d)| s.options[d].1).sum();
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            let mut edges = EdgeMultiset::new();
            for (s, &d) in slots.iter().zip(&digits) {
                edges.merge(&s.options[d].0);
            }
            if validate_tour_subgraph(instance, &edges).is_valid() {
                best = Some((cost, edges));
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return best.ok_or_else(|| Error::OracleGuard("no valid assignment".into()));
            }
            digits[pos] += 1;
            if digits[pos] < slots[pos].options.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DepotLocation, PickLocation, WarehouseLayout};

    #[test]
    fn empty_instance() {
        let inst = Instance::new(
            WarehouseLayout::new(2, 2, 3, 10).unwrap(),
            DepotLocation { aisle: 1, cross_aisle: 1 },
            vec![],
        )
        .unwrap();
        let (cost, edges) = brute_force_config_opt(&inst).unwrap();
        assert_eq!(cost, 0);
        assert!(edges.is_empty());
    }

    #[test]
    fn single_aisle() {
        let inst = Instance::new(
            WarehouseLayout::new(1, 2, 3, 10).unwrap(),
            DepotLocation { aisle: 1, cross_aisle: 1 },
            vec![PickLocation { aisle: 1, subaisle: 1, offset: 4 }, PickLocation { aisle: 1, subaisle: 1, offset: 9 }],
        )
        .unwrap();
        assert_eq!(brute_force_config_opt(&inst).unwrap().0, 18);
    }

    #[test]
    fn guard_rejects_large_spaces() {
        let inst = crate::model::generate_instance(6, 3, 1, 10, 12, 3).unwrap();
        assert!(enumeration_size(&inst).unwrap() > ENUMERATION_GUARD);
        assert!(matches!(brute_force_config_opt(&inst), Err(Error::OracleGuard(_))));
    }
}
