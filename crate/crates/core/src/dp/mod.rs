//! Frontier-state dynamic programs over the aisles of a warehouse.
//!
//! Both solvers sweep aisles left to right and keep, per canonical
//! [`FrontierState`], only the cheapest partial tour subgraph. The reduced
//! solver has one stage per gap: choosing the horizontal edges of a gap fixes
//! every horizontal edge touching the aisle on its left, so that aisle's
//! vertical edges follow from [`resolve_vertical`]. The baseline solver
//! alternates vertical stages (one per subaisle layer) with horizontal
//! stages.

mod baseline;
mod reduced;
pub mod state;
mod table;

pub use baseline::solve_baseline;
pub use reduced::solve_reduced;
pub use state::{FrontierState, Mark};
pub use table::{derive_singleblock_table, table_diff, TableCell, TableDiff, TransitionTable, COLUMNS, REFERENCE_TABLE, ROWS};

use crate::config::{resolve_vertical, vertex_degrees, vertices, Resolution};
use crate::error::{Error, Result};
use crate::model::{aisle_points, Instance, PointKind};
use state::{advance, AisleWork};

/// Horizontal edge counts across one gap, index `j - 1` (bottom first).
pub type GapChoice = Vec<u8>;

/// Short top-first label of a gap choice, e.g. `[0, 2]` is `"20"`.
pub fn choice_label(choice: &[u8]) -> String {
    choice.iter().rev().map(|c| char::from(b'0' + c)).collect()
}

pub(crate) fn check_supported(n: usize) -> Result<()> {
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedCrossAisles(n));
    }
    Ok(())
}

/// All vectors in `{0, 1, 2}^n` with an even sum, in lexicographic order.
pub fn enumerate_gap_choices(n: usize) -> Result<Vec<GapChoice>> {
    check_supported(n)?;
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let mut v = vec![0u8; n];
        for slot in v.iter_mut().rev() {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        if v.iter().map(|&x| x as u32).sum::<u32>() % 2 == 0 {
            out.push(v);
        }
    }
    Ok(out)
}

/// Left-hand edge counts implied by a reduced-DP frontier state: every
/// frontier edge comes from a single gap, so `Even` means two.
pub fn left_incidence(state: &FrontierState) -> Vec<u8> {
    state
        .marks()
        .iter()
        .map(|m| match m {
            Mark::Zero => 0,
            Mark::Uneven => 1,
            Mark::Even => 2,
        })
        .collect()
}

/// One successor produced by [`transition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Successor {
    pub target: FrontierState,
    pub cost: u64,
    pub resolution: Resolution,
}

/// Applies gap choice `choice` (between `aisle` and `aisle + 1`) to `state`,
/// the frontier at `aisle` whose left-hand counts are `left`, resolving
/// `aisle`'s vertical edges. Passing an all-zero choice on the last aisle
/// closes the tour.
pub fn transition(
    state: &FrontierState,
    left: &[u8],
    choice: &[u8],
    instance: &Instance,
    aisle: usize,
) -> Result<Vec<Successor>> {
    let n = instance.layout().cross_aisles();
    if left.len() != n || choice.len() != n || state.marks().len() != n {
        return Err(Error::Incidence("vector length does not match cross-aisle count".into()));
    }
    if left.iter().zip(state.marks()).any(|(&l, &m)| Mark::from_degree(l as u32) != m) {
        return Err(Error::Incidence(format!("left counts {left:?} disagree with state {state}")));
    }
    let incidence: Vec<u32> = left.iter().zip(choice).map(|(&l, &c)| (l + c) as u32).collect();
    let points = aisle_points(instance, aisle);
    let whole = instance.all_required_in_aisle(aisle);
    let has_picks = points.iter().any(|p| p.kind == PointKind::Pick);
    if incidence.iter().all(|&c| c == 0) && has_picks && !whole {
        return Ok(Vec::new());
    }

    let verts = vertices(&points);
    let required_vertex = points.iter().find_map(|p| match p.kind {
        PointKind::Depot(j) => Some(j - 1),
        _ => None,
    });
    let horizontal_cost = choice.iter().map(|&c| c as u64).sum::<u64>() * instance.layout().aisle_pitch();

    let mut out = Vec::new();
    for resolution in resolve_vertical(aisle, &points, &incidence, whole)? {
        if !resolution.covered {
            continue;
        }
        let spans = resolution.spans();
        let degrees = vertex_degrees(&points, &spans);
        let in_graph: Vec<bool> = (0..n).map(|j| incidence[j] > 0 || degrees[j] > 0).collect();
        let mut joins = Vec::new();
        for s in &spans {
            let inside: Vec<usize> = (0..n).filter(|&j| s.lo <= verts[j].1 && verts[j].1 <= s.hi).collect();
            joins.extend(inside.windows(2).map(|w| (w[0], w[1])));
        }
        let work = AisleWork { in_graph: &in_graph, joins: &joins, right: choice, required_vertex };
        if let Some(target) = advance(state, &work) {
            out.push(Successor { target, cost: resolution.cost + horizontal_cost, resolution });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DepotLocation, PickLocation, WarehouseLayout};

    #[test]
    fn gap_choices_single_block() {
        let c = enumerate_gap_choices(2).unwrap();
        let labels: Vec<String> = c.iter().map(|v| choice_label(v)).collect();
        assert_eq!(labels, vec!["00", "20", "11", "02", "22"]);
        assert!(c.iter().all(|v| v.iter().map(|&x| x as u32).sum::<u32>() % 2 == 0));
    }

    #[test]
    fn gap_choices_two_block() {
        // brute-force count over all 27 triples
        let mut count = 0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if (a + b + c) % 2 == 0 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 14);
        let c = enumerate_gap_choices(3).unwrap();
        assert_eq!(c.len(), count);
        let mut sorted = c.clone();
        sorted.sort();
        assert_eq!(sorted, c);
    }

    #[test]
    fn gap_choices_reject_unsupported() {
        assert!(enumerate_gap_choices(1).is_err());
        assert!(enumerate_gap_choices(4).is_err());
    }

    fn generic() -> Instance {
        let layout = WarehouseLayout::new(3, 2, 1, 10).unwrap();
        let picks = vec![
            PickLocation { aisle: 2, subaisle: 1, offset: 3 },
            PickLocation { aisle: 2, subaisle: 1, offset: 7 },
            PickLocation { aisle: 1, subaisle: 1, offset: 5 },
        ];
        Instance::new(layout, DepotLocation { aisle: 1, cross_aisle: 1 }, picks).unwrap()
    }

    fn state(bottom: Mark, top: Mark, comps: [Option<usize>; 2]) -> FrontierState {
        FrontierState::new(vec![bottom, top], &comps, false)
    }

    #[test]
    fn uu_with_top_pair_becomes_even_zero() {
        let s = state(Mark::Uneven, Mark::Uneven, [Some(0), Some(0)]);
        let out = transition(&s, &left_incidence(&s), &[0, 2], &generic(), 2).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].target.label(), "E01C");
        assert_eq!(out[0].resolution.pieces[0].1.roman(), "i");
    }

    #[test]
    fn stranded_top_has_no_successor() {
        let s = state(Mark::Zero, Mark::Even, [None, Some(0)]);
        assert_eq!(s.label(), "E01C");
        let out = transition(&s, &left_incidence(&s), &[2, 0], &generic(), 2).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn inconsistent_left_counts_are_rejected() {
        let s = state(Mark::Zero, Mark::Even, [None, Some(0)]);
        assert!(transition(&s, &[1, 2], &[0, 0], &generic(), 2).is_err());
    }

    #[test]
    fn closed_state_only_passes_empty_aisles() {
        let layout = WarehouseLayout::new(3, 2, 1, 10).unwrap();
        let inst = Instance::new(
            layout,
            DepotLocation { aisle: 1, cross_aisle: 1 },
            vec![PickLocation { aisle: 1, subaisle: 1, offset: 5 }],
        )
        .unwrap();
        let closed = FrontierState::closed(2);
        for choice in enumerate_gap_choices(2).unwrap() {
            let out = transition(&closed, &[0, 0], &choice, &inst, 2).unwrap();
            if choice == [0, 0] {
                assert_eq!(out.len(), 1);
                assert_eq!(out[0].target.label(), "001C");
                assert_eq!(out[0].resolution.pieces[0].1.roman(), "vi");
            } else {
                assert!(out.is_empty(), "choice {choice:?}");
            }
        }
    }

    #[test]
    fn empty_state_closes_on_whole_instance_aisle() {
        let layout = WarehouseLayout::new(3, 2, 1, 10).unwrap();
        let picks = vec![
            PickLocation { aisle: 2, subaisle: 1, offset: 3 },
            PickLocation { aisle: 2, subaisle: 1, offset: 7 },
        ];
        let inst = Instance::new(layout, DepotLocation { aisle: 2, cross_aisle: 1 }, picks).unwrap();
        let out = transition(&FrontierState::empty(2), &[0, 0], &[0, 0], &inst, 2).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].target.label(), "001C");
        assert_eq!(out[0].resolution.pieces[0].1.roman(), "iii");
        assert_eq!(out[0].cost, 14);
    }
}
