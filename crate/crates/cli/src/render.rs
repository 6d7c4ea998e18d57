use std::fmt::Write;

use anyhow::{bail, Result};
use pickroute::io::SolutionFile;
use pickroute::oracle::validate_tour_subgraph;
use pickroute::walk::walk_edges;
use pickroute::{tour_length, Instance};

const MARGIN: f64 = 40.0;
const EXTENT: f64 = 480.0;
const STROKE_GAP: f64 = 6.0;

struct Frame {
    scale: f64,
    pitch: u64,
    length: u64,
}

impl Frame {
    fn point(&self, aisle: usize, pos: u64) -> (f64, f64) {
        let x = MARGIN + ((aisle - 1) as u64 * self.pitch) as f64 * self.scale;
        let y = MARGIN + (self.length - pos) as f64 * self.scale;
        (x, y)
    }
}

/// Parallel copies of a segment, one per unit of multiplicity, offset
/// perpendicular to it.
fn strokes(svg: &mut String, a: (f64, f64), b: (f64, f64), mult: u32, vertical: bool) {
    let class = match mult {
        1 => "single",
        2 => "double",
        _ => "multiple",
    };
    let _ = writeln!(svg, r#"  <g class="edge {class}">"#);
    for k in 0..mult {
        let off = (k as f64 - (mult - 1) as f64 / 2.0) * STROKE_GAP;
        let (dx, dy) = if vertical { (off, 0.0) } else { (0.0, off) };
        let _ = writeln!(
            svg,
            r#"    <line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#,
            a.0 + dx,
            a.1 + dy,
            b.0 + dx,
            b.1 + dy
        );
    }
    svg.push_str("  </g>\n");
}

/// Static drawing of the layout, depot, picks and tour edges. The solution
/// must be a tour subgraph of this instance with a consistent walk.
pub fn render_svg(instance: &Instance, solution: &SolutionFile) -> Result<String> {
    let edges = solution.edges()?;
    let length = match tour_length(instance, &edges) {
        Ok(len) => len,
        Err(e) => bail!("solution does not match instance: {e}"),
    };
    let verdict = validate_tour_subgraph(instance, &edges);
    if !verdict.is_valid() {
        bail!("solution does not match instance: {verdict}");
    }
    if length != solution.cost {
        bail!("solution does not match instance: edges sum to {length}, file says {}", solution.cost);
    }
    let walk: Vec<(usize, u64)> = solution.walk.iter().map(|&[a, p]| (a as usize, p)).collect();
    if walk_edges(instance, &walk).as_ref() != Some(&edges) {
        bail!("solution does not match instance: walk does not traverse the solution edges");
    }

    let layout = instance.layout();
    let width_units = (layout.aisles() as u64 - 1) * layout.aisle_pitch();
    let length_units = layout.aisle_length();
    let scale = (EXTENT / width_units.max(length_units) as f64).min(40.0);
    let frame = Frame { scale, pitch: layout.aisle_pitch(), length: length_units };
    let width = 2.0 * MARGIN + width_units as f64 * scale;
    let height = 2.0 * MARGIN + length_units as f64 * scale;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    svg.push_str(r##"<g class="layout" stroke="#d0d0d0" stroke-width="8" stroke-linecap="square">"##);
    svg.push('\n');
    for a in 1..=layout.aisles() {
        let (x1, y1) = frame.point(a, 0);
        let (x2, y2) = frame.point(a, length_units);
        let _ = writeln!(svg, r#"  <line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#);
    }
    for j in 1..=layout.cross_aisles() {
        let pos = layout.vertex_position(j);
        let (x1, y1) = frame.point(1, pos);
        let (x2, y2) = frame.point(layout.aisles(), pos);
        let _ = writeln!(svg, r#"  <line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#);
    }
    svg.push_str("</g>\n");

    svg.push_str(r##"<g class="tour" stroke="#1f4e9c" stroke-width="2">"##);
    svg.push('\n');
    for ((aisle, lo, hi), mult) in edges.vertical() {
        strokes(&mut svg, frame.point(aisle, lo), frame.point(aisle, hi), mult, true);
    }
    for ((gap, j), mult) in edges.horizontal() {
        let pos = layout.vertex_position(j);
        strokes(&mut svg, frame.point(gap, pos), frame.point(gap + 1, pos), mult, false);
    }
    svg.push_str("</g>\n");

    svg.push_str(r#"<g class="picks" font-family="sans-serif" font-size="10">"#);
    svg.push('\n');
    for (i, p) in instance.picks().iter().enumerate() {
        let (x, y) = frame.point(p.aisle, p.position(layout));
        let _ = writeln!(
            svg,
            r#"  <circle cx="{x:.1}" cy="{y:.1}" r="4" fill="white" stroke="black"/><text x="{:.1}" y="{:.1}">p{}</text>"#,
            x + 7.0,
            y + 3.5,
            i + 1
        );
    }
    svg.push_str("</g>\n");

    let (x, y) = frame.point(instance.depot().aisle, instance.depot_position());
    let _ = writeln!(
        svg,
        r#"<g class="depot" font-family="sans-serif" font-size="10"><rect x="{:.1}" y="{:.1}" width="10" height="10" fill="black"/><text x="{:.1}" y="{:.1}">depot</text></g>"#,
        x - 5.0,
        y - 5.0,
        x + 8.0,
        y + 16.0
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
