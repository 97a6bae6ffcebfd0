use std::collections::BTreeMap;
use std::fmt::Write;

use crate::geometry::{Disc, PNorm, Point};
use crate::graph::{Network, Role};
use crate::reduction::{GadgetInstance, OrthoDrawing};
use crate::solvers::Instance;

/// What to draw.
pub enum Figure<'a> {
    Instance(&'a Instance),
    Gadget(&'a GadgetInstance),
    Network(&'a Network, PNorm),
    Drawing(&'a OrthoDrawing),
}

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Canvas width and height in pixels.
    pub size: f64,
    /// Extra disc to draw, e.g. a smallest enclosing disc.
    pub disc: Option<Disc>,
    /// Norm used for the legend and the disc outline.
    pub norm: PNorm,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 600.0,
            disc: None,
            norm: PNorm::L2,
        }
    }
}

const MARGIN: f64 = 40.0;
const LEGEND: f64 = 90.0;
const UNIT_CIRCLE_SAMPLES: usize = 96;

struct Canvas {
    lo: [f64; 2],
    scale: f64,
    size: f64,
}

impl Canvas {
    fn fit(points: &[[f64; 2]], size: f64) -> Canvas {
        if points.is_empty() {
            return Canvas {
                lo: [0.0, 0.0],
                scale: 1.0,
                size,
            };
        }
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        Canvas {
            lo,
            scale: (size - 2.0 * MARGIN) / span,
            size,
        }
    }

    /// SVG coordinates; y grows upwards in the plane.
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            MARGIN + (p[0] - self.lo[0]) * self.scale,
            self.size - MARGIN - (p[1] - self.lo[1]) * self.scale,
        )
    }
}

/// Boundary of the unit ℓp ball, counter-clockwise.
fn unit_circle(norm: PNorm) -> Vec<[f64; 2]> {
    (0..UNIT_CIRCLE_SAMPLES)
        .map(|i| {
            let t = i as f64 / UNIT_CIRCLE_SAMPLES as f64 * std::f64::consts::TAU;
            let (x, y) = (t.cos(), t.sin());
            let r = norm.norm_f64(x, y);
            [x / r, y / r]
        })
        .collect()
}

fn polygon(out: &mut String, pts: &[(f64, f64)], style: &str) {
    let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(out, r#"<polygon points="{}" {style}/>"#, list.join(" "));
}

fn legend(out: &mut String, norm: PNorm, size: f64) {
    let (cx, cy, r) = (size + LEGEND / 2.0, 60.0, 25.0);
    let pts: Vec<(f64, f64)> = unit_circle(norm)
        .iter()
        .map(|p| (cx + r * p[0], cy - r * p[1]))
        .collect();
    polygon(out, &pts, r#"fill="none" stroke="black" stroke-width="1""#);
    let _ = writeln!(
        out,
        r#"<text x="{cx:.3}" y="{:.3}" font-size="12" text-anchor="middle">unit ball, p = {norm}</text>"#,
        cy + r + 18.0
    );
    let _ = writeln!(
        out,
        r#"<circle cx="{:.3}" cy="130.000" r="4" fill="black"/><text x="{:.3}" y="134.000" font-size="12">terminal</text>"#,
        size + 10.0,
        size + 20.0
    );
    let _ = writeln!(
        out,
        r#"<circle cx="{:.3}" cy="150.000" r="4" fill="white" stroke="black"/><text x="{:.3}" y="154.000" font-size="12">Steiner</text>"#,
        size + 10.0,
        size + 20.0
    );
}

/// Coincident points are merged; the count is their multiplicity.
fn grouped(points: impl IntoIterator<Item = Point>) -> BTreeMap<Point, usize> {
    let mut m = BTreeMap::new();
    for p in points {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

fn terminal_marks(out: &mut String, c: &Canvas, pts: &BTreeMap<Point, usize>) {
    for (p, &mult) in pts {
        let (x, y) = c.map(p.to_f64());
        if mult > 1 {
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="5" fill="black"/>"#);
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}" font-size="9">×{mult}</text>"#,
                x + 6.0,
                y - 6.0
            );
        } else {
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#);
        }
    }
}

fn disc_outline(out: &mut String, c: &Canvas, disc: &Disc, norm: PNorm) {
    let ctr = disc.center_f64();
    let r = disc.radius;
    let pts: Vec<(f64, f64)> = unit_circle(norm)
        .iter()
        .map(|p| c.map([ctr[0] + r * p[0], ctr[1] + r * p[1]]))
        .collect();
    polygon(out, &pts, r#"fill="none" stroke="gray" stroke-width="1""#);
    let (x, y) = c.map(ctr);
    let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="white" stroke="black"/>"#);
}

/// Deterministic SVG 1.1: terminals filled (coincident ones merged into a
/// larger disc with a multiplicity label), Steiner points hollow, gadget
/// regions dashed, and the unit ball of the active norm in a legend.
pub fn render_svg(fig: &Figure<'_>, opts: &SvgOptions) -> String {
    let size = opts.size;
    let mut body = String::new();
    let mut extent: Vec<[f64; 2]> = Vec::new();
    let norm = match fig {
        Figure::Instance(i) => i.norm,
        Figure::Gadget(g) => g.norm,
        Figure::Network(_, n) => *n,
        Figure::Drawing(_) => opts.norm,
    };
    match fig {
        Figure::Instance(i) => extent.extend(i.terminals.iter().map(|t| t.pos.to_f64())),
        Figure::Gadget(g) => extent.extend(g.terminals.iter().map(|t| t.pos.to_f64())),
        Figure::Network(n, _) => extent.extend(n.nodes().iter().map(|v| v.pos.to_f64())),
        Figure::Drawing(d) => extent.extend(d.vertex_pos.values().map(|p| [p[0] as f64, p[1] as f64])),
    }
    if let Some(disc) = &opts.disc {
        let c = disc.center_f64();
        extent.push([c[0] - disc.radius, c[1] - disc.radius]);
        extent.push([c[0] + disc.radius, c[1] + disc.radius]);
    }
    let canvas = Canvas::fit(&extent, size);
    match fig {
        Figure::Instance(i) => {
            terminal_marks(&mut body, &canvas, &grouped(i.terminals.iter().map(|t| t.pos.clone())));
        }
        Figure::Gadget(g) => {
            for region in &g.regions {
                for arm in &region.arms {
                    let pts: Vec<String> = arm
                        .iter()
                        .map(|p| {
                            let (x, y) = canvas.map(g.place(*p).to_f64());
                            format!("{x:.3},{y:.3}")
                        })
                        .collect();
                    let _ = writeln!(
                        body,
                        r#"<polyline points="{}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#,
                        pts.join(" ")
                    );
                }
            }
            terminal_marks(&mut body, &canvas, &grouped(g.terminals.iter().map(|t| t.pos.clone())));
        }
        Figure::Network(n, _) => {
            for (a, b) in n.edges() {
                let (x1, y1) = canvas.map(n.node(a).pos.to_f64());
                let (x2, y2) = canvas.map(n.node(b).pos.to_f64());
                let _ = writeln!(
                    body,
                    r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black"/>"#
                );
            }
            let terms = n
                .nodes()
                .iter()
                .filter(|v| v.role == Role::Terminal)
                .map(|v| v.pos.clone());
            terminal_marks(&mut body, &canvas, &grouped(terms));
            for v in n.nodes().iter().filter(|v| v.role == Role::Steiner) {
                let (x, y) = canvas.map(v.pos.to_f64());
                let _ = writeln!(body, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="white" stroke="black"/>"#);
            }
        }
        Figure::Drawing(d) => {
            for r in &d.routes {
                let pts: Vec<String> = r
                    .points
                    .iter()
                    .map(|p| {
                        let (x, y) = canvas.map([p[0] as f64, p[1] as f64]);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                let _ = writeln!(
                    body,
                    r#"<polyline points="{}" fill="none" stroke="black"/>"#,
                    pts.join(" ")
                );
            }
            for (label, p) in &d.vertex_pos {
                let (x, y) = canvas.map([p[0] as f64, p[1] as f64]);
                let _ = writeln!(body, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#);
                let _ = writeln!(
                    body,
                    r#"<text x="{:.3}" y="{:.3}" font-size="11">{label}</text>"#,
                    x + 6.0,
                    y - 6.0
                );
            }
        }
    }
    if let Some(disc) = &opts.disc {
        disc_outline(&mut body, &canvas, disc, norm);
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{size:.0}" viewBox="0 0 {:.0} {size:.0}">"#,
        size + LEGEND,
        size + LEGEND
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    out.push_str(&body);
    legend(&mut out, norm, size);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{smallest_enclosing_disc, Point};

    #[test]
    fn empty_instance_has_legend_only() {
        let inst = Instance::from_points(&[], 0, PNorm::L1);
        let svg = render_svg(&Figure::Instance(&inst), &SvgOptions::default());
        assert!(svg.contains("unit ball, p = 1"));
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn right_triangle_figure_is_deterministic() {
        let pts = [Point::from_ints(0, 0), Point::from_ints(0, 2), Point::from_ints(2, 0)];
        let disc = smallest_enclosing_disc(&pts, PNorm::L2, 1e-9).unwrap();
        let inst = Instance::from_points(&pts, 1, PNorm::L2);
        let opts = SvgOptions {
            disc: Some(disc),
            ..SvgOptions::default()
        };
        let a = render_svg(&Figure::Instance(&inst), &opts);
        let b = render_svg(&Figure::Instance(&inst), &opts);
        assert_eq!(a, b);
        assert!(a.contains(r#"fill="white" stroke="black""#));
    }
}
