//! Vertical and horizontal subaisle configurations, segment merging, and the
//! resolver that derives an aisle's vertical edges from its horizontal
//! incidence.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{AislePoint, EdgeMultiset, PointKind};

/// The six vertical shapes a subaisle (or merged segment) can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerticalConfig {
    /// (i) single edges over the whole span.
    Traversal,
    /// (ii) double edges from the lowest required point up to the top endpoint.
    Top,
    /// (iii) double edges from the bottom endpoint up to the highest required point.
    Bottom,
    /// (iv) double edges everywhere except the gap `(lo, hi)` between two
    /// consecutive points.
    LargestGap { gap: (u64, u64) },
    /// (v) double edges over the whole span.
    DoublePass,
    /// (vi) no edges.
    None,
}

impl VerticalConfig {
    pub fn roman(&self) -> &'static str {
        match self {
            VerticalConfig::Traversal => "i",
            VerticalConfig::Top => "ii",
            VerticalConfig::Bottom => "iii",
            VerticalConfig::LargestGap { .. } => "iv",
            VerticalConfig::DoublePass => "v",
            VerticalConfig::None => "vi",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            VerticalConfig::Traversal => "traversal",
            VerticalConfig::Top => "top",
            VerticalConfig::Bottom => "bottom",
            VerticalConfig::LargestGap { .. } => "largest-gap",
            VerticalConfig::DoublePass => "double-pass",
            VerticalConfig::None => "none",
        }
    }

    /// Mirror image under a top-to-bottom flip of an aisle of length `top`.
    pub fn mirrored(&self, top: u64) -> VerticalConfig {
        match *self {
            VerticalConfig::Top => VerticalConfig::Bottom,
            VerticalConfig::Bottom => VerticalConfig::Top,
            VerticalConfig::LargestGap { gap: (a, b) } => VerticalConfig::LargestGap { gap: (top - b, top - a) },
            other => other,
        }
    }
}

impl fmt::Display for VerticalConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

/// Per cross-aisle edge counts across one gap, index `j - 1`.
pub type HorizontalChoice = Vec<u8>;

/// A vertical span of one aisle between two cross-aisle vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub aisle: usize,
    /// Bottom cross-aisle index `j_b`.
    pub bottom: usize,
    /// Top cross-aisle index `j_t > j_b`.
    pub top: usize,
    pub lo: u64,
    pub hi: u64,
    /// Sorted absolute positions of points the configuration must cover.
    pub required: Vec<u64>,
}

impl Segment {
    pub fn length(&self) -> u64 {
        self.hi - self.lo
    }

    /// Consecutive gaps between `lo`, the required points and `hi`.
    pub fn gaps(&self) -> Vec<(u64, u64)> {
        let mut stops = Vec::with_capacity(self.required.len() + 2);
        stops.push(self.lo);
        stops.extend(self.required.iter().copied());
        stops.push(self.hi);
        stops.windows(2).map(|w| (w[0], w[1])).collect()
    }

    fn mirrored(&self, top: u64, n: usize) -> Segment {
        let mut required: Vec<u64> = self.required.iter().map(|y| top - y).collect();
        required.reverse();
        Segment {
            aisle: self.aisle,
            bottom: n + 1 - self.top,
            top: n + 1 - self.bottom,
            lo: top - self.hi,
            hi: top - self.lo,
            required,
        }
    }
}

/// A run of edges `[lo, hi]` with uniform multiplicity on one aisle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
    pub mult: u32,
}

/// Edge spans and cost of applying `config` to `segment`.
pub fn config_spans(config: VerticalConfig, segment: &Segment) -> Result<(Vec<Span>, u64)> {
    let (lo, hi) = (segment.lo, segment.hi);
    let span = |a: u64, b: u64, mult: u32| Span { lo: a, hi: b, mult };
    let spans = match config {
        VerticalConfig::Traversal => vec![span(lo, hi, 1)],
        VerticalConfig::DoublePass => vec![span(lo, hi, 2)],
        VerticalConfig::None => {
            if !segment.required.is_empty() {
                return Err(Error::InvalidConfig {
                    config: "none",
                    reason: format!("{} required points", segment.required.len()),
                });
            }
            vec![]
        }
        VerticalConfig::Bottom => match segment.required.last() {
            Some(&y) => vec![span(lo, y, 2)],
            None => vec![],
        },
        VerticalConfig::Top => match segment.required.first() {
            Some(&y) => vec![span(y, hi, 2)],
            None => vec![],
        },
        VerticalConfig::LargestGap { gap: (a, b) } => {
            if !segment.gaps().contains(&(a, b)) {
                return Err(Error::InvalidConfig {
                    config: "largest-gap",
                    reason: format!("({a}, {b}) is not a gap of the segment"),
                });
            }
            vec![span(lo, a, 2), span(b, hi, 2)]
        }
    };
    let spans: Vec<Span> = spans.into_iter().filter(|s| s.lo < s.hi).collect();
    let cost = spans.iter().map(|s| s.mult as u64 * (s.hi - s.lo)).sum();
    Ok((spans, cost))
}

/// Primitive edges and cost of `config` on `segment`, split at `points`.
pub fn config_edges(config: VerticalConfig, segment: &Segment, points: &[AislePoint]) -> Result<(EdgeMultiset, u64)> {
    let (spans, cost) = config_spans(config, segment)?;
    let mut edges = EdgeMultiset::new();
    for s in spans {
        edges.add_vertical_span(segment.aisle, points, s.lo, s.hi, s.mult);
    }
    Ok((edges, cost))
}

/// Maximum gaps of `segment`, each as the shape it produces: an interior gap
/// gives [`VerticalConfig::LargestGap`], a gap touching the top or bottom
/// endpoint degenerates to [`VerticalConfig::Bottom`] / [`VerticalConfig::Top`].
pub fn largest_gap_options(segment: &Segment) -> Vec<VerticalConfig> {
    if segment.required.is_empty() {
        return vec![VerticalConfig::None];
    }
    let gaps = segment.gaps();
    let best = gaps.iter().map(|(a, b)| b - a).max().unwrap_or(0);
    let last = gaps.len() - 1;
    gaps.iter()
        .enumerate()
        .filter(|(_, (a, b))| b - a == best)
        .map(|(t, &gap)| match t {
            0 => VerticalConfig::Top,
            t if t == last => VerticalConfig::Bottom,
            _ => VerticalConfig::LargestGap { gap },
        })
        .collect()
}

/// Per-subaisle shapes for enumeration-based solvers. Interior max-gap ties
/// are expanded only when `expand_ties` is set; otherwise the lowest one is
/// kept.
pub fn subaisle_options(segment: &Segment, expand_ties: bool) -> Vec<VerticalConfig> {
    if segment.required.is_empty() {
        return vec![VerticalConfig::Traversal, VerticalConfig::DoublePass, VerticalConfig::None];
    }
    let mut out = vec![VerticalConfig::Traversal, VerticalConfig::Top, VerticalConfig::Bottom];
    let interior = largest_gap_options(segment)
        .into_iter()
        .filter(|c| matches!(c, VerticalConfig::LargestGap { .. }));
    if expand_ties {
        out.extend(interior);
    } else {
        out.extend(interior.take(1));
    }
    out.push(VerticalConfig::DoublePass);
    out
}

/// Cross-aisle vertices of an aisle as `(j, position)`, bottom to top.
pub(crate) fn vertices(points: &[AislePoint]) -> Vec<(usize, u64)> {
    points.iter().filter_map(|p| p.kind.cross_aisle().map(|j| (j, p.position))).collect()
}

fn depot_point(points: &[AislePoint]) -> Option<(usize, u64)> {
    points.iter().find_map(|p| match p.kind {
        PointKind::Depot(j) => Some((j, p.position)),
        _ => None,
    })
}

fn segment_between(aisle: usize, points: &[AislePoint], bottom: (usize, u64), top: (usize, u64)) -> Segment {
    let required = points
        .iter()
        .filter(|p| p.position > bottom.1 && p.position < top.1)
        .filter(|p| matches!(p.kind, PointKind::Pick | PointKind::Depot(_)))
        .map(|p| p.position)
        .collect();
    Segment { aisle, bottom: bottom.0, top: top.0, lo: bottom.1, hi: top.1, required }
}

/// Splits an aisle into maximal spans whose interior vertices have no
/// horizontal incidence. `incidence[j - 1]` counts horizontal edges at
/// vertex `j` from both sides.
pub fn merge_segments(aisle: usize, points: &[AislePoint], incidence: &[u32]) -> Vec<Segment> {
    let verts = vertices(points);
    let last = verts.len() - 1;
    let mut out = Vec::new();
    let mut start = 0;
    for (idx, _) in verts.iter().enumerate().skip(1) {
        if idx == last || incidence[idx] > 0 {
            out.push(segment_between(aisle, points, verts[start], verts[idx]));
            start = idx;
        }
    }
    out
}

/// The vertical edges of one aisle implied by its horizontal incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub pieces: Vec<(Segment, VerticalConfig)>,
    pub cost: u64,
    /// Per vertex `j - 1`: whether vertical edges touch it.
    pub attachment: Vec<bool>,
    /// Every required point of the aisle lies on the resolved edges or on a
    /// vertex with horizontal incidence.
    pub covered: bool,
}

impl Resolution {
    pub fn spans(&self) -> Vec<Span> {
        self.pieces
            .iter()
            .flat_map(|(seg, cfg)| config_spans(*cfg, seg).expect("resolver emits valid configs").0)
            .collect()
    }

    pub fn edges(&self, points: &[AislePoint]) -> EdgeMultiset {
        let mut edges = EdgeMultiset::new();
        for (seg, cfg) in &self.pieces {
            edges.merge(&config_edges(*cfg, seg, points).expect("resolver emits valid configs").0);
        }
        edges
    }
}

/// Vertical degree per vertex (index `j - 1`) contributed by `spans`.
pub fn vertex_degrees(points: &[AislePoint], spans: &[Span]) -> Vec<u32> {
    vertices(points)
        .iter()
        .map(|&(_, pos)| {
            spans
                .iter()
                .map(|s| {
                    let mut d = 0;
                    if s.lo < pos && pos <= s.hi {
                        d += s.mult;
                    }
                    if s.lo <= pos && pos < s.hi {
                        d += s.mult;
                    }
                    d
                })
                .sum()
        })
        .collect()
}

fn finish(pieces: Vec<(Segment, VerticalConfig)>, points: &[AislePoint], incidence: &[u32]) -> Resolution {
    let mut res = Resolution { pieces, cost: 0, attachment: vec![], covered: false };
    let spans = res.spans();
    res.cost = spans.iter().map(|s| s.mult as u64 * (s.hi - s.lo)).sum();
    res.attachment = vertex_degrees(points, &spans).iter().map(|&d| d > 0).collect();
    let on_span = |pos: u64| spans.iter().any(|s| s.lo <= pos && pos <= s.hi);
    let lone_depot = incidence.iter().all(|&c| c == 0) && !points.iter().any(|p| p.kind == PointKind::Pick);
    res.covered = points.iter().all(|p| match p.kind {
        PointKind::Pick => on_span(p.position),
        PointKind::Depot(j) => incidence[j - 1] > 0 || on_span(p.position) || lone_depot,
        PointKind::Vertex(_) => true,
    });
    res
}

/// Derives the vertical configurations of one aisle from the horizontal
/// edge counts at its vertices.
///
/// Odd-incidence vertices are paired bottom to top and joined by single
/// edges. The remaining merged segments take a largest gap when both
/// endpoints carry horizontal edges, a one-sided double run when exactly one
/// does, and nothing when they hold no required point. With no horizontal
/// edges at all the aisle must hold the whole instance, and every required
/// point is reached by double edges from the depot.
///
/// Several resolutions are returned only when tied maximum gaps leave
/// different endpoints touched.
pub fn resolve_vertical(
    aisle: usize,
    points: &[AislePoint],
    incidence: &[u32],
    whole_instance: bool,
) -> Result<Vec<Resolution>> {
    let verts = vertices(points);
    if incidence.len() != verts.len() {
        return Err(Error::Incidence(format!("{} counts for {} vertices", incidence.len(), verts.len())));
    }
    let odd: Vec<usize> = (0..verts.len()).filter(|&i| incidence[i] % 2 == 1).collect();
    if odd.len() % 2 == 1 {
        return Err(Error::Incidence(format!("{} odd vertices on aisle {aisle}", odd.len())));
    }
    let depot = depot_point(points);
    let has_picks = points.iter().any(|p| p.kind == PointKind::Pick);

    if incidence.iter().all(|&c| c == 0) {
        let mut whole = segment_between(aisle, points, verts[0], verts[verts.len() - 1]);
        if !has_picks {
            // a depot alone is visited by the empty walk
            whole.required.clear();
            return Ok(vec![finish(vec![(whole, VerticalConfig::None)], points, incidence)]);
        }
        if !whole_instance {
            return Err(Error::Incidence(format!("aisle {aisle} has picks but no horizontal edges")));
        }
        let Some((dj, dpos)) = depot else {
            return Err(Error::Incidence(format!("aisle {aisle} holds the instance but not the depot")));
        };
        let anchor = (dj, dpos);
        let mut pieces = Vec::new();
        if dj > verts[0].0 {
            let seg = segment_between(aisle, points, verts[0], anchor);
            let cfg = if seg.required.is_empty() { VerticalConfig::None } else { VerticalConfig::Top };
            pieces.push((seg, cfg));
        }
        if dj < verts[verts.len() - 1].0 {
            let seg = segment_between(aisle, points, anchor, verts[verts.len() - 1]);
            let cfg = if seg.required.is_empty() { VerticalConfig::None } else { VerticalConfig::Bottom };
            pieces.push((seg, cfg));
        }
        return Ok(vec![finish(pieces, points, incidence)]);
    }

    let traversals: Vec<Segment> = odd
        .chunks(2)
        .map(|pair| segment_between(aisle, points, verts[pair[0]], verts[pair[1]]))
        .collect();

    let fixed: Vec<(Segment, VerticalConfig)> =
        traversals.iter().cloned().map(|s| (s, VerticalConfig::Traversal)).collect();
    let mut choices: Vec<(Segment, Vec<VerticalConfig>)> = Vec::new();

    for mut seg in merge_segments(aisle, points, incidence) {
        if traversals.iter().any(|t| t.lo <= seg.lo && seg.hi <= t.hi) {
            continue;
        }
        let bottom_inc = incidence[seg.bottom - 1] > 0;
        let top_inc = incidence[seg.top - 1] > 0;
        if let Some((dj, dpos)) = depot {
            if (dj == seg.bottom && !bottom_inc) || (dj == seg.top && !top_inc) {
                seg.required.push(dpos);
                seg.required.sort_unstable();
            }
        }
        let options = if seg.required.is_empty() {
            vec![VerticalConfig::None]
        } else {
            match (bottom_inc, top_inc) {
                (true, true) => largest_gap_options(&seg),
                (true, false) => vec![VerticalConfig::Bottom],
                (false, true) => vec![VerticalConfig::Top],
                (false, false) => {
                    return Err(Error::Incidence(format!(
                        "segment {}..{} of aisle {aisle} is unreachable",
                        seg.bottom, seg.top
                    )))
                }
            }
        };
        choices.push((seg, options));
    }

    // Cartesian product over tied options, one resolution per attachment.
    let mut partial: Vec<Vec<(Segment, VerticalConfig)>> = vec![Vec::new()];
    for (seg, options) in &choices {
        partial = partial
            .into_iter()
            .flat_map(|p| {
                options.iter().map(move |&cfg| {
                    let mut next = p.clone();
                    next.push((seg.clone(), cfg));
                    next
                })
            })
            .collect();
    }
    let mut out: Vec<Resolution> = Vec::new();
    for extra in partial {
        let mut pieces = fixed.clone();
        pieces.extend(extra);
        pieces.sort_by_key(|(s, _)| s.lo);
        let res = finish(pieces, points, incidence);
        if !out.iter().any(|r| r.attachment == res.attachment) {
            out.push(res);
        }
    }
    Ok(out)
}

/// Mirror of a resolution for an aisle of length `top` with `n` vertices.
pub fn mirror_resolution(res: &Resolution, top: u64, n: usize) -> Resolution {
    let mut pieces: Vec<(Segment, VerticalConfig)> =
        res.pieces.iter().map(|(s, c)| (s.mirrored(top, n), c.mirrored(top))).collect();
    pieces.sort_by_key(|(s, _)| s.lo);
    let mut attachment = res.attachment.clone();
    attachment.reverse();
    Resolution { pieces, cost: res.cost, attachment, covered: res.covered }
}
