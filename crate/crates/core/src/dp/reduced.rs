use std::collections::BTreeMap;

use super::{check_supported, enumerate_gap_choices, left_incidence, transition, FrontierState, GapChoice};
use crate::config::Resolution;
use crate::error::Result;
use crate::model::{aisle_points, tour_length, EdgeMultiset, Instance};
use crate::solution::Solution;
use crate::walk::extract_walk;

#[derive(Debug, Clone)]
struct Entry {
    cost: u64,
    back: Option<(FrontierState, GapChoice, Resolution)>,
}

/// Reduced dynamic program: one stage per gap, verticals derived from the
/// horizontal choice. The last aisle is closed inside the final stage; a
/// single-aisle warehouse takes one stage.
pub fn solve_reduced(instance: &Instance) -> Result<Solution> {
    let layout = instance.layout();
    let n = layout.cross_aisles();
    let m = layout.aisles();
    check_supported(n)?;
    let choices = enumerate_gap_choices(n)?;
    let closing = vec![vec![0u8; n]];

    let mut layers: Vec<BTreeMap<FrontierState, Entry>> = Vec::with_capacity(m + 1);
    layers.push(BTreeMap::from([(FrontierState::empty(n), Entry { cost: 0, back: None })]));
    let mut expansions = 0u64;
    let mut peak_states = 1;

    for aisle in 1..=m {
        let last = aisle == m;
        let options = if last { &closing } else { &choices };
        let mut next: BTreeMap<FrontierState, Entry> = BTreeMap::new();
        for (state, entry) in &layers[aisle - 1] {
            let left = left_incidence(state);
            for choice in options {
                expansions += 1;
                for succ in transition(state, &left, choice, instance, aisle)? {
                    if last && !succ.target.is_closed() {
                        continue;
                    }
                    let cost = entry.cost + succ.cost;
                    let better = match next.get(&succ.target) {
                        None => true,
                        Some(e) => {
                            let prev_choice = &e.back.as_ref().expect("stored entries have back-pointers").1;
                            (cost, choice) < (e.cost, prev_choice)
                        }
                    };
                    if better {
                        next.insert(
                            succ.target,
                            Entry { cost, back: Some((state.clone(), choice.clone(), succ.resolution)) },
                        );
                    }
                }
            }
        }
        peak_states = peak_states.max(next.len());
        layers.push(next);
    }

    let final_state = FrontierState::closed(n);
    let final_entry = layers[m]
        .get(&final_state)
        .unwrap_or_else(|| panic!("no closed tour for a valid instance"));
    let cost = final_entry.cost;

    let mut edges = EdgeMultiset::new();
    let mut vertical_choices = vec![Vec::new(); m];
    let mut horizontal_choices = vec![Vec::new(); m - 1];
    let mut cursor = final_state;
    for aisle in (1..=m).rev() {
        let entry = &layers[aisle][&cursor];
        let (prev, choice, resolution) = entry.back.clone().expect("reachable entries have back-pointers");
        edges.merge(&resolution.edges(&aisle_points(instance, aisle)));
        if aisle < m {
            for (j, &c) in choice.iter().enumerate() {
                edges.add_horizontal(aisle, j + 1, c as u32);
            }
            horizontal_choices[aisle - 1] = choice;
        }
        vertical_choices[aisle - 1] = resolution.pieces;
        cursor = prev;
    }
    debug_assert_eq!(tour_length(instance, &edges)?, cost);
    let walk = extract_walk(instance, &edges)?;

    Ok(Solution {
        cost,
        edges,
        vertical_choices,
        horizontal_choices,
        walk,
        stages: (m - 1).max(1),
        expansions,
        peak_states,
    })
}
