use std::collections::BTreeMap;

use super::state::{advance, AisleWork};
use super::{check_supported, enumerate_gap_choices, FrontierState, GapChoice, Mark};
use crate::config::{config_spans, subaisle_options, vertices, Segment, VerticalConfig};
use crate::error::Result;
use crate::model::{aisle_points, tour_length, AislePoint, EdgeMultiset, Instance, PointKind};
use crate::solution::Solution;
use crate::walk::extract_walk;

#[derive(Debug, Clone)]
enum Action {
    Vertical(Segment, VerticalConfig),
    Horizontal(GapChoice),
}

#[derive(Debug, Clone)]
struct Entry {
    cost: u64,
    double_passes: u32,
    back: Option<(FrontierState, Action)>,
}

type Layer = BTreeMap<FrontierState, Entry>;

fn relax(layer: &mut Layer, target: FrontierState, candidate: Entry) {
    let better = match layer.get(&target) {
        None => true,
        Some(e) => (candidate.cost, candidate.double_passes) < (e.cost, e.double_passes),
    };
    if better {
        layer.insert(target, candidate);
    }
}

fn subaisle(aisle: usize, points: &[AislePoint], lower: (usize, u64), upper: (usize, u64)) -> Segment {
    let required = points
        .iter()
        .filter(|p| p.kind == PointKind::Pick && p.position > lower.1 && p.position < upper.1)
        .map(|p| p.position)
        .collect();
    Segment { aisle, bottom: lower.0, top: upper.0, lo: lower.1, hi: upper.1, required }
}

/// Places `config` on the subaisle between vertices `b` and `b + 1`
/// (0-based) of the current aisle.
fn apply_vertical(state: &FrontierState, b: usize, config: VerticalConfig, seg: &Segment) -> Option<FrontierState> {
    let (spans, _) = config_spans(config, seg).ok()?;
    if spans.is_empty() {
        return Some(state.clone());
    }
    if state.is_closed() {
        return None;
    }
    let lower: u32 = spans.iter().filter(|s| s.lo == seg.lo).map(|s| s.mult).sum();
    let upper: u32 = spans.iter().filter(|s| s.hi == seg.hi).map(|s| s.mult).sum();
    let joined = spans.iter().any(|s| s.lo == seg.lo && s.hi == seg.hi);

    let mut marks = state.marks().to_vec();
    marks[b] = marks[b].with_edges(lower);
    marks[b + 1] = marks[b + 1].with_edges(upper);
    let fresh = state.marks().len();
    let mut keys: Vec<Option<usize>> = state
        .comp()
        .iter()
        .enumerate()
        .map(|(j, c)| match (c, marks[j]) {
            (_, Mark::Zero) => None,
            (Some(c), _) => Some(*c as usize),
            (None, _) => Some(fresh + j),
        })
        .collect();
    if joined {
        let (keep, drop) = (keys[b].expect("touched"), keys[b + 1].expect("touched"));
        for k in keys.iter_mut().flatten() {
            if *k == drop {
                *k = keep;
            }
        }
    }
    Some(FrontierState::new(marks, &keys, false))
}

/// Classic alternating dynamic program: a vertical stage per subaisle layer
/// of each aisle, then a horizontal stage per gap. Stage counts are `2m - 1`
/// for one block and `3m - 1` for two.
pub fn solve_baseline(instance: &Instance) -> Result<Solution> {
    let layout = instance.layout();
    let n = layout.cross_aisles();
    let m = layout.aisles();
    check_supported(n)?;
    let choices = enumerate_gap_choices(n)?;
    let closing = vec![vec![0u8; n]];
    let w = layout.aisle_pitch();

    let mut layers: Vec<Layer> = vec![BTreeMap::from([(
        FrontierState::empty(n),
        Entry { cost: 0, double_passes: 0, back: None },
    )])];
    let mut stages = 0usize;
    let mut expansions = 0u64;
    let mut peak_states = 1;

    for aisle in 1..=m {
        let points = aisle_points(instance, aisle);
        let verts = vertices(&points);
        for b in 0..n - 1 {
            let seg = subaisle(aisle, &points, verts[b], verts[b + 1]);
            let options = subaisle_options(&seg, false);
            let mut next = Layer::new();
            for (state, entry) in layers.last().expect("non-empty") {
                for &config in &options {
                    expansions += 1;
                    let Some(target) = apply_vertical(state, b, config, &seg) else { continue };
                    let step = config_spans(config, &seg)?.1;
                    relax(
                        &mut next,
                        target,
                        Entry {
                            cost: entry.cost + step,
                            double_passes: entry.double_passes + u32::from(config == VerticalConfig::DoublePass),
                            back: Some((state.clone(), Action::Vertical(seg.clone(), config))),
                        },
                    );
                }
            }
            stages += 1;
            peak_states = peak_states.max(next.len());
            layers.push(next);
        }

        let last = aisle == m;
        let required_vertex = points.iter().find_map(|p| match p.kind {
            PointKind::Depot(j) => Some(j - 1),
            _ => None,
        });
        let mut next = Layer::new();
        for (state, entry) in layers.last().expect("non-empty") {
            for choice in if last { &closing } else { &choices } {
                expansions += 1;
                let finals: Vec<Mark> = state.marks().iter().zip(choice).map(|(m, &c)| m.with_edges(c as u32)).collect();
                if finals.contains(&Mark::Uneven) {
                    continue;
                }
                let in_graph: Vec<bool> = finals.iter().map(|&m| m != Mark::Zero).collect();
                let work = AisleWork { in_graph: &in_graph, joins: &[], right: choice, required_vertex };
                let Some(target) = advance(state, &work) else { continue };
                if last && !target.is_closed() {
                    continue;
                }
                let step = choice.iter().map(|&c| c as u64).sum::<u64>() * w;
                relax(
                    &mut next,
                    target,
                    Entry {
                        cost: entry.cost + step,
                        double_passes: entry.double_passes,
                        back: Some((state.clone(), Action::Horizontal(choice.clone()))),
                    },
                );
            }
        }
        if !last {
            stages += 1;
        }
        peak_states = peak_states.max(next.len());
        layers.push(next);
    }

    let mut cursor = FrontierState::closed(n);
    let cost = layers
        .last()
        .and_then(|l| l.get(&cursor))
        .unwrap_or_else(|| panic!("no closed tour for a valid instance"))
        .cost;

    let mut edges = EdgeMultiset::new();
    let mut vertical_choices: Vec<Vec<(Segment, VerticalConfig)>> = vec![Vec::new(); m];
    let mut horizontal_choices = vec![Vec::new(); m - 1];
    let mut aisle = m;
    let mut pending_gap = false;
    for layer in layers.iter().skip(1).rev() {
        let (prev, action) = layer[&cursor].back.clone().expect("reachable entries have back-pointers");
        match action {
            Action::Horizontal(choice) => {
                if pending_gap {
                    aisle -= 1;
                }
                pending_gap = true;
                if aisle < m {
                    for (j, &c) in choice.iter().enumerate() {
                        edges.add_horizontal(aisle, j + 1, c as u32);
                    }
                    horizontal_choices[aisle - 1] = choice;
                }
            }
            Action::Vertical(seg, config) => {
                let (spans, _) = config_spans(config, &seg)?;
                let points = aisle_points(instance, seg.aisle);
                for s in spans {
                    edges.add_vertical_span(seg.aisle, &points, s.lo, s.hi, s.mult);
                }
                vertical_choices[seg.aisle - 1].insert(0, (seg, config));
            }
        }
        cursor = prev;
    }
    debug_assert_eq!(tour_length(instance, &edges)?, cost);
    let walk = extract_walk(instance, &edges)?;

    Ok(Solution { cost, edges, vertical_choices, horizontal_choices, walk, stages, expansions, peak_states })
}
