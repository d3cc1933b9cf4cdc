//! Deterministic SVG rendering of torus drawings.
//!
//! The picture shows the fundamental parallelogram spanned by the columns of
//! `M` and a 3×3 block of its translates, clipped to that block. Vertex glyphs
//! are drawn for the central copy only. An optional dual drawing is overlaid
//! with its own classes, and degenerate vertices and edges found by the
//! drawing analysis are highlighted.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::analysis::{analyze_drawing, DegeneracyReport};
use crate::error::Result;
use crate::graph::{Dart, TorusGraph};
use crate::reciprocal::DualDrawing;
use crate::torus::Vec2;

#[derive(Clone, Copy, Debug)]
pub struct RenderOptions<'a> {
    pub overlay: Option<&'a DualDrawing>,
    /// Pixels per native unit.
    pub scale: f64,
    pub labels: bool,
    pub tol: f64,
}

impl Default for RenderOptions<'_> {
    fn default() -> Self {
        RenderOptions {
            overlay: None,
            scale: 200.0,
            labels: false,
            tol: crate::DEFAULT_TOL,
        }
    }
}

const STYLE: &str = ".torus{fill:none;stroke:#888;stroke-dasharray:4 3}\
.edge{stroke:#1f4e9c;stroke-width:1.5}\
.edge-ghost{stroke:#1f4e9c;stroke-width:1;opacity:0.35}\
.vertex{fill:#1f4e9c}\
.dual-edge{stroke:#c0392b;stroke-width:1.2}\
.dual-edge-ghost{stroke:#c0392b;stroke-width:0.8;opacity:0.35}\
.dual-vertex{fill:#c0392b}\
.degenerate-edge{stroke:#f39c12;stroke-width:3;opacity:0.8}\
.degenerate-vertex{fill:none;stroke:#f39c12;stroke-width:2}\
.label{font:10px sans-serif;fill:#222}";

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".to_string()
    } else {
        s
    }
}

struct Canvas {
    scale: f64,
    out: String,
}

impl Canvas {
    fn xy(&self, p: &Vec2) -> (String, String) {
        (num(p.x * self.scale), num(-p.y * self.scale))
    }

    fn line(&mut self, class: &str, a: &Vec2, b: &Vec2) {
        let (x1, y1) = self.xy(a);
        let (x2, y2) = self.xy(b);
        let _ = writeln!(
            self.out,
            r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
        );
    }

    fn circle(&mut self, class: &str, p: &Vec2, r: f64) {
        let (cx, cy) = self.xy(p);
        let _ = writeln!(
            self.out,
            r#"<circle class="{class}" cx="{cx}" cy="{cy}" r="{}"/>"#,
            num(r)
        );
    }

    fn label(&mut self, p: &Vec2, text: &str) {
        let (x, y) = self.xy(p);
        let _ = writeln!(self.out, r#"<text class="label" x="{x}" y="{y}" dx="4" dy="-4">{text}</text>"#);
    }

    fn polygon(&mut self, class: Option<&str>, pts: &[Vec2]) {
        let points: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = self.xy(p);
                format!("{x},{y}")
            })
            .collect();
        match class {
            Some(c) => {
                let _ = writeln!(self.out, r#"<polygon class="{c}" points="{}"/>"#, points.join(" "));
            }
            None => {
                let _ = writeln!(self.out, r#"<polygon points="{}"/>"#, points.join(" "));
            }
        }
    }
}

fn tiles() -> impl Iterator<Item = Vec2> {
    (-1..=1).flat_map(|i| (-1..=1).map(move |j| Vec2::new(i as f64, j as f64)))
}

fn degenerate_edges(report: &DegeneracyReport) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    for c in &report.crossing_edge_pairs {
        set.extend([c.a, c.b]);
    }
    for o in &report.overlapping_edge_pairs {
        set.extend([o.a, o.b]);
    }
    for c in &report.vertex_edge_contacts {
        set.insert(c.edge);
    }
    set
}

fn degenerate_vertices(report: &DegeneracyReport) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    for c in &report.coincident_vertex_pairs {
        set.extend([c.a, c.b]);
    }
    for c in &report.vertex_edge_contacts {
        set.insert(c.vertex);
    }
    set
}

fn draw_graph(canvas: &mut Canvas, g: &TorusGraph, dual: bool, labels: bool, tol: f64) -> Result<()> {
    let m = *g.torus().basis();
    let report = analyze_drawing(g, tol)?;
    let bad_edges = degenerate_edges(&report);
    let bad_vertices = degenerate_vertices(&report);
    let (edge_class, ghost_class, vertex_class) = if dual {
        ("dual-edge", "dual-edge-ghost", "dual-vertex")
    } else {
        ("edge", "edge-ghost", "vertex")
    };
    for t in tiles() {
        let class = if t == Vec2::zeros() { edge_class } else { ghost_class };
        for e in 0..g.edge_count() {
            let p0 = g.coord(g.ends(e)[0]) + t;
            let p1 = p0 + g.displacement(Dart::forward(e));
            canvas.line(class, &(m * p0), &(m * p1));
        }
    }
    for &e in &bad_edges {
        let p0 = g.coord(g.ends(e)[0]);
        let p1 = p0 + g.displacement(Dart::forward(e));
        canvas.line("degenerate-edge", &(m * p0), &(m * p1));
    }
    let radius = 3.0 / canvas.scale;
    for v in 0..g.vertex_count() {
        let p = m * g.coord(v);
        canvas.circle(vertex_class, &p, radius);
        if labels {
            canvas.label(&p, &if dual { format!("f{v}") } else { v.to_string() });
        }
    }
    for &v in &bad_vertices {
        canvas.circle("degenerate-vertex", &(m * g.coord(v)), 2.5 * radius);
    }
    Ok(())
}

/// Renders `g` (and the overlay, if any) as an SVG 1.1 document. Equal
/// inputs give byte-identical output.
pub fn render_svg(g: &TorusGraph, options: &RenderOptions<'_>) -> Result<String> {
    g.ensure_valid()?;
    let m = *g.torus().basis();
    let scale = options.scale;
    let corners = |lo: f64, hi: f64| {
        [
            m * Vec2::new(lo, lo),
            m * Vec2::new(hi, lo),
            m * Vec2::new(hi, hi),
            m * Vec2::new(lo, hi),
        ]
    };
    let block = corners(-1.0, 2.0);
    let (mut min, mut max) = (block[0], block[0]);
    for p in &block {
        min = min.inf(p);
        max = max.sup(p);
    }
    let pad = 10.0;
    let width = (max.x - min.x) * scale + 2.0 * pad;
    let height = (max.y - min.y) * scale + 2.0 * pad;
    let mut canvas = Canvas {
        scale,
        out: String::new(),
    };
    let _ = writeln!(canvas.out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        canvas.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(width),
        num(height),
        num(min.x * scale - pad),
        num(-max.y * scale - pad),
        num(width),
        num(height)
    );
    let _ = writeln!(canvas.out, "<style>{STYLE}</style>");
    let _ = writeln!(canvas.out, r#"<defs><clipPath id="tiles">"#);
    canvas.polygon(None, &block);
    let _ = writeln!(canvas.out, "</clipPath></defs>");
    canvas.polygon(Some("torus"), &corners(0.0, 1.0));
    let _ = writeln!(canvas.out, r#"<g clip-path="url(#tiles)">"#);
    draw_graph(&mut canvas, g, false, options.labels, options.tol)?;
    if let Some(dual) = options.overlay {
        draw_graph(&mut canvas, &dual.graph, true, options.labels, options.tol)?;
    }
    let _ = writeln!(canvas.out, "</g>");
    let _ = writeln!(canvas.out, "</svg>");
    Ok(canvas.out)
}
