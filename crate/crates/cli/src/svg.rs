//! Deterministic SVG drawings of development windows and realizations.
//!
//! One lattice cell (or one unit of realization length) is 100 SVG units and
//! the y axis points up, so `(x, y)` is drawn at `(100 x, -100 y)`.
//! Components are colored from a fixed palette by component index.

use std::fmt::Write;

use periodic_rigidity::development::Development;
use periodic_rigidity::direction::Realization;
use periodic_rigidity::ColoredGraph;

pub const UNIT: f64 = 100.0;

pub const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

pub fn component_color(index: usize) -> &'static str {
    PALETTE[index % PALETTE.len()]
}

// Fixed-precision numbers; never prints `-0`.
fn num(x: f64) -> String {
    let s = format!("{:.2}", x);
    let t = s.trim_end_matches('0').trim_end_matches('.');
    match t {
        "-0" | "" => "0".to_string(),
        _ => t.to_string(),
    }
}

fn sx(x: f64) -> String {
    num(UNIT * x)
}

fn sy(y: f64) -> String {
    num(-UNIT * y)
}

struct Canvas {
    body: String,
    min: [f64; 2],
    max: [f64; 2],
}

impl Canvas {
    fn new() -> Self {
        Canvas { body: String::new(), min: [0.0; 2], max: [0.0; 2] }
    }

    fn see(&mut self, p: [f64; 2]) {
        for k in 0..2 {
            self.min[k] = self.min[k].min(p[k]);
            self.max[k] = self.max[k].max(p[k]);
        }
    }

    fn line(&mut self, a: [f64; 2], b: [f64; 2], style: &str) {
        self.see(a);
        self.see(b);
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
            sx(a[0]),
            sy(a[1]),
            sx(b[0]),
            sy(b[1])
        );
    }

    fn circle(&mut self, c: [f64; 2], r: f64, fill: &str) {
        self.see(c);
        let _ = writeln!(self.body, r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#, sx(c[0]), sy(c[1]), num(r));
    }

    fn polygon(&mut self, pts: &[[f64; 2]], style: &str) {
        let mut d = String::new();
        for (k, p) in pts.iter().enumerate() {
            self.see(*p);
            if k > 0 {
                d.push(' ');
            }
            let _ = write!(d, "{},{}", sx(p[0]), sy(p[1]));
        }
        let _ = writeln!(self.body, r#"<polygon points="{d}" {style}/>"#);
    }

    fn arrow(&mut self, a: [f64; 2], b: [f64; 2]) {
        self.line(a, b, r##"stroke="#000000" stroke-width="2" marker-end="url(#arrow)""##);
    }

    fn finish(self) -> String {
        let pad = 0.25;
        let (x0, x1) = (self.min[0] - pad, self.max[0] + pad);
        let (y0, y1) = (self.min[1] - pad, self.max[1] + pad);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
            sx(x0),
            sy(y1),
            num(UNIT * (x1 - x0)),
            num(UNIT * (y1 - y0))
        );
        s.push_str(concat!(
            r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
            r#"<path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>"#,
            "\n"
        ));
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

/// Position of quotient vertex `i` inside its unit cell: a centered grid.
pub fn cell_offset(i: usize, n: usize) -> [f64; 2] {
    let side = (1..).find(|s| s * s >= n.max(1)).unwrap_or(1);
    let step = 1.0 / (side as f64 + 1.0);
    [step * ((i % side) as f64 + 1.0), step * ((i / side) as f64 + 1.0)]
}

/// Window grid, shaded fundamental domain, lattice arrows, then the edges
/// and vertices of the window colored by development component.
pub fn emit_development_svg(graph: &ColoredGraph, dev: &Development) -> String {
    let n = graph.vertex_count();
    let w = dev.window;
    let mut c = Canvas::new();
    c.polygon(
        &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        r##"fill="#eeeeee" stroke="none""##,
    );
    let grid = r##"stroke="#cccccc" stroke-width="1""##;
    let (x0, x1, y0, y1) = (w.x0 as f64, (w.x1 + 1) as f64, w.y0 as f64, (w.y1 + 1) as f64);
    for x in w.x0..=w.x1 + 1 {
        c.line([x as f64, y0], [x as f64, y1], grid);
    }
    for y in w.y0..=w.y1 + 1 {
        c.line([x0, y as f64], [x1, y as f64], grid);
    }
    c.arrow([0.0, 0.0], [1.0, 0.0]);
    c.arrow([0.0, 0.0], [0.0, 1.0]);

    let pos = |k: usize| {
        let (i, g) = dev.vertices[k];
        let o = cell_offset(i, n);
        [g.g1 as f64 + o[0], g.g2 as f64 + o[1]]
    };
    for &(_, _, a, b) in &dev.edges {
        if a == b {
            continue;
        }
        let style = format!(r#"stroke="{}" stroke-width="2""#, component_color(dev.component[a]));
        c.line(pos(a), pos(b), &style);
    }
    for k in 0..dev.vertices.len() {
        c.circle(pos(k), 0.05, component_color(dev.component[k]));
    }
    c.finish()
}

/// Shaded fundamental parallelogram, lattice vectors as arrows, each edge as
/// a segment from `p_i` to `p_j + L gamma_ij`, and the points.
pub fn emit_realization_svg(graph: &ColoredGraph, r: &Realization) -> String {
    let comps = graph.vertex_components();
    let l1 = [r.l[0][0], r.l[1][0]];
    let l2 = [r.l[0][1], r.l[1][1]];
    let mut c = Canvas::new();
    c.polygon(
        &[[0.0, 0.0], l1, [l1[0] + l2[0], l1[1] + l2[1]], l2],
        r##"fill="#eeeeee" stroke="#cccccc" stroke-width="1""##,
    );
    c.arrow([0.0, 0.0], l1);
    c.arrow([0.0, 0.0], l2);
    for (k, e) in graph.edges().iter().enumerate() {
        let a = r.p[e.tail];
        let eta = r.displacement(graph, k);
        let part = comps.part_of(e.tail).unwrap_or(0);
        let style = format!(r#"stroke="{}" stroke-width="2""#, component_color(part));
        c.line(a, [a[0] + eta[0], a[1] + eta[1]], &style);
    }
    for (i, p) in r.p.iter().enumerate() {
        c.circle(*p, 0.05, component_color(comps.part_of(i).unwrap_or(0)));
    }
    c.finish()
}
