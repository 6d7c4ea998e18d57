//! The vertical resolver against exhaustive per-subaisle enumeration.

use pickroute::config::{config_spans, resolve_vertical, subaisle_options, vertex_degrees, Segment, Span, VerticalConfig};
use pickroute::model::{AislePoint, DepotLocation, PickLocation, PointKind};
use pickroute::{aisle_points, Instance, WarehouseLayout};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Case {
    n: usize,
    h: u64,
    /// `(subaisle, offset)` picks in the aisle under test.
    picks: Vec<(usize, u64)>,
    /// Cross-aisle of the depot when it sits in this aisle.
    depot: Option<usize>,
    incidence: Vec<u32>,
}

impl Case {
    /// The aisle under test is aisle 1; a depot elsewhere goes to aisle 2.
    fn instance(&self) -> Instance {
        let layout = WarehouseLayout::new(2, self.n, 3, self.h).unwrap();
        let depot = match self.depot {
            Some(j) => DepotLocation { aisle: 1, cross_aisle: j },
            None => DepotLocation { aisle: 2, cross_aisle: 1 },
        };
        let picks = self.picks.iter().map(|&(subaisle, offset)| PickLocation { aisle: 1, subaisle, offset }).collect();
        Instance::new(layout, depot, picks).unwrap()
    }

    fn whole_instance(&self) -> bool {
        self.depot.is_some()
    }
}

fn case() -> impl Strategy<Value = Case> {
    (2usize..=3, 2u64..=12)
        .prop_flat_map(|(n, h)| {
            let picks = proptest::collection::btree_set((1..n, 1..h), 0..6);
            let depot = proptest::option::of(1..=n);
            let incidence = proptest::collection::vec(0u32..=4, n);
            (Just(n), Just(h), picks, depot, incidence)
        })
        .prop_map(|(n, h, picks, depot, mut incidence)| {
            // horizontal edges across a cut come in pairs, so odd vertices pair up
            if incidence.iter().filter(|&&c| c % 2 == 1).count() % 2 == 1 {
                incidence[0] ^= 1;
            }
            Case { n, h, picks: picks.into_iter().collect(), depot, incidence }
        })
        .prop_filter("an aisle without horizontal edges must hold the whole instance", |c| {
            c.incidence.iter().any(|&x| x > 0) || c.picks.is_empty() || c.depot.is_some()
        })
}

fn components(spans: &[Span]) -> Vec<(u64, u64)> {
    let mut sorted: Vec<(u64, u64)> = spans.iter().filter(|s| s.mult > 0).map(|s| (s.lo, s.hi)).collect();
    sorted.sort_unstable();
    let mut out: Vec<(u64, u64)> = Vec::new();
    for (lo, hi) in sorted {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Whether `spans` complete a valid aisle given the horizontal incidence:
/// even degrees, every required point on an edge or an incident vertex, and
/// every piece reachable from an incident vertex (or from the depot when the
/// aisle holds everything).
fn feasible(points: &[AislePoint], incidence: &[u32], spans: &[Span]) -> bool {
    let degrees = vertex_degrees(points, spans);
    if degrees.iter().zip(incidence).any(|(d, i)| (d + i) % 2 == 1) {
        return false;
    }
    let vertex_pos: Vec<u64> =
        points.iter().filter(|p| p.kind.cross_aisle().is_some()).map(|p| p.position).collect();
    let comps = components(spans);
    let on_edge = |pos: u64| comps.iter().any(|&(lo, hi)| lo <= pos && pos <= hi);
    let idle = incidence.iter().all(|&c| c == 0);
    for p in points {
        let ok = match p.kind {
            PointKind::Pick => on_edge(p.position),
            PointKind::Depot(j) => incidence[j - 1] > 0 || on_edge(p.position) || idle,
            PointKind::Vertex(_) => true,
        };
        if !ok {
            return false;
        }
    }
    comps.iter().all(|&(lo, hi)| {
        if idle {
            points.iter().any(|p| matches!(p.kind, PointKind::Depot(_)) && lo <= p.position && p.position <= hi)
        } else {
            vertex_pos.iter().zip(incidence).any(|(&pos, &c)| c > 0 && lo <= pos && pos <= hi)
        }
    }) && (!idle || comps.len() <= 1)
}

/// Minimum cost over every per-subaisle configuration assignment.
fn enumerate_min(points: &[AislePoint], incidence: &[u32]) -> Option<u64> {
    let verts: Vec<(usize, u64)> =
        points.iter().filter_map(|p| p.kind.cross_aisle().map(|j| (j, p.position))).collect();
    let slots: Vec<Vec<(Vec<Span>, u64)>> = verts
        .windows(2)
        .map(|w| {
            let required = points
                .iter()
                .filter(|p| p.kind == PointKind::Pick && p.position > w[0].1 && p.position < w[1].1)
                .map(|p| p.position)
                .collect();
            let seg = Segment { aisle: 1, bottom: w[0].0, top: w[1].0, lo: w[0].1, hi: w[1].1, required };
            subaisle_options(&seg, true).into_iter().map(|c| config_spans(c, &seg).unwrap()).collect()
        })
        .collect();
    let mut best: Option<u64> = None;
    let mut digits = vec![0usize; slots.len()];
    loop {
        let spans: Vec<Span> = slots.iter().zip(&digits).flat_map(|(s, &d)| s[d].0.clone()).collect();
        let cost: u64 = slots.iter().zip(&digits).map(|(s, &d)| s[d].1).sum();
        if best.is_none_or(|b| cost < b) && feasible(points, incidence, &spans) {
            best = Some(cost);
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return best;
            }
            digits[pos] += 1;
            if digits[pos] < slots[pos].len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn resolutions_are_feasible_and_minimal(c in case()) {
        let inst = c.instance();
        let points = aisle_points(&inst, 1);
        let resolutions = resolve_vertical(1, &points, &c.incidence, c.whole_instance()).unwrap();
        prop_assert!(!resolutions.is_empty());
        let best = enumerate_min(&points, &c.incidence);
        for r in &resolutions {
            prop_assert!(r.covered);
            prop_assert!(feasible(&points, &c.incidence, &r.spans()), "{:?}", r);
            prop_assert!(r.pieces.iter().all(|(_, cfg)| *cfg != VerticalConfig::DoublePass));
            prop_assert_eq!(Some(r.cost), best);
        }
    }

    #[test]
    fn tied_resolutions_differ_in_attachment(c in case()) {
        let inst = c.instance();
        let points = aisle_points(&inst, 1);
        let resolutions = resolve_vertical(1, &points, &c.incidence, c.whole_instance()).unwrap();
        for (i, a) in resolutions.iter().enumerate() {
            for b in &resolutions[i + 1..] {
                prop_assert_eq!(a.cost, b.cost);
                prop_assert_ne!(&a.attachment, &b.attachment);
            }
        }
    }

    #[test]
    fn mirrored_aisle_resolves_to_same_cost(c in case()) {
        let inst = c.instance();
        let mirror = inst.mirrored();
        let mut flipped = c.incidence.clone();
        flipped.reverse();
        let a = resolve_vertical(1, &aisle_points(&inst, 1), &c.incidence, c.whole_instance()).unwrap();
        let b = resolve_vertical(1, &aisle_points(&mirror, 1), &flipped, c.whole_instance()).unwrap();
        prop_assert_eq!(a[0].cost, b[0].cost);
        prop_assert_eq!(a.len(), b.len());
    }
}
