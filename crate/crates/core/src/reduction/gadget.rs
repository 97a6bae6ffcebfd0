use std::collections::HashMap;

use super::source::{min_parallel_separation, validate_source, GridPoint, OrthoDrawing, SourceGraph};
use crate::error::{Error, Result};
use crate::geometry::{lemma2_bound, PNorm, Point};
use crate::solvers::{Instance, Terminal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetRole {
    /// The grid point of a `W` vertex.
    WTerminal { w: String },
    /// The terminal on the path from `u` to `w`, two units from `w`.
    Tip { u: String, w: String },
    /// One of two coincident terminals on the region of `u`.
    PairMember { u: String, index: usize, twin: String },
}

impl GadgetRole {
    /// The `U` vertex whose terminal set this terminal belongs to.
    pub fn owner(&self) -> Option<&str> {
        match self {
            GadgetRole::WTerminal { .. } => None,
            GadgetRole::Tip { u, .. } | GadgetRole::PairMember { u, .. } => Some(u),
        }
    }

    pub fn is_tip(&self) -> bool {
        matches!(self, GadgetRole::Tip { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetTerminal {
    pub id: String,
    pub pos: Point,
    pub role: GadgetRole,
}

/// The region `R(u)`: the three grid paths from `u` to its tips, in the
/// scaled drawing's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub u: String,
    pub arms: Vec<Vec<GridPoint>>,
}

/// The terminal set built from a scaled drawing of a source graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub terminals: Vec<GadgetTerminal>,
    /// Steiner budget `2n`.
    pub k: usize,
    pub norm: PNorm,
    /// `4n + 2`.
    pub delta: i64,
    pub source: SourceGraph,
    /// The scaled drawing the terminals were placed on.
    pub drawing: OrthoDrawing,
    pub regions: Vec<Region>,
}

impl GadgetInstance {
    pub fn n(&self) -> usize {
        self.source.n
    }

    pub fn instance(&self) -> Instance {
        Instance {
            terminals: self
                .terminals
                .iter()
                .map(|t| Terminal::new(t.id.clone(), t.pos.clone()))
                .collect(),
            k: self.k,
            norm: self.norm,
            degree2_only: false,
        }
    }

    pub fn points(&self) -> Vec<Point> {
        self.terminals.iter().map(|t| t.pos.clone()).collect()
    }

    /// For each terminal, the position in `source.u` of its owner.
    pub fn clusters(&self) -> Vec<Option<usize>> {
        let pos: HashMap<&str, usize> = self
            .source
            .u
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.source.graph.label(v), i))
            .collect();
        self.terminals
            .iter()
            .map(|t| t.role.owner().map(|u| pos[u]))
            .collect()
    }

    /// Terminal index of each `W` vertex, in `source.w` order.
    pub fn w_terminals(&self) -> Vec<usize> {
        let idx: HashMap<&str, usize> = self
            .terminals
            .iter()
            .enumerate()
            .filter_map(|(i, t)| match &t.role {
                GadgetRole::WTerminal { w } => Some((w.as_str(), i)),
                _ => None,
            })
            .collect();
        self.source
            .w
            .iter()
            .map(|&w| idx[self.source.graph.label(w)])
            .collect()
    }

    pub fn tip_index(&self, u: &str, w: &str) -> Option<usize> {
        self.terminals.iter().position(|t| {
            matches!(&t.role, GadgetRole::Tip { u: tu, w: tw } if tu == u && tw == w)
        })
    }

    /// Maps a drawing point into terminal coordinates.
    pub fn place(&self, p: GridPoint) -> Point {
        place(self.norm, p)
    }
}

fn place(norm: PNorm, p: GridPoint) -> Point {
    match norm {
        // ℓ∞ is a 45° rotation of ℓ1: (x, y) ↦ (x + y, x − y) is an isometry
        // from ℓ1 onto ℓ∞.
        PNorm::Infinity => Point::from_ints(p[0] + p[1], p[0] - p[1]),
        _ => Point::from_ints(p[0], p[1]),
    }
}

/// The separating bound of the reduction: `2^(1/p)`, and `2` for the max
/// norm, where the construction runs in the rotated ℓ1 plane.
pub fn gap_bound(norm: PNorm) -> f64 {
    match norm {
        PNorm::Infinity => 2.0,
        _ => lemma2_bound(norm),
    }
}

/// The point at grid distance `t` along `route`.
pub(crate) fn point_along(route: &[GridPoint], mut t: i64) -> GridPoint {
    for w in route.windows(2) {
        let len = (w[1][0] - w[0][0]).abs() + (w[1][1] - w[0][1]).abs();
        if t <= len {
            let dir = [(w[1][0] - w[0][0]).signum(), (w[1][1] - w[0][1]).signum()];
            return [w[0][0] + dir[0] * t, w[0][1] + dir[1] * t];
        }
        t -= len;
    }
    *route.last().expect("nonempty route")
}

/// The route prefix of grid length `t`.
fn prefix_along(route: &[GridPoint], t: i64) -> Vec<GridPoint> {
    let mut out = vec![route[0]];
    let mut left = t;
    for w in route.windows(2) {
        let len = (w[1][0] - w[0][0]).abs() + (w[1][1] - w[0][1]).abs();
        if left <= len {
            let end = point_along(w, left);
            if end != *out.last().unwrap() {
                out.push(end);
            }
            return out;
        }
        out.push(w[1]);
        left -= len;
    }
    out
}

/// Builds the terminal set on an already scaled drawing.
///
/// `W` vertices become W-terminals. On the route from each `u ∈ U` to each
/// neighbour `w`, a tip sits two grid units before `w`, and coincident pairs
/// sit at every unit step from `u` up to one unit before the tip; the pair
/// at `u` itself is shared by its three routes.
pub fn build_instance(
    src: &SourceGraph,
    drawing: &OrthoDrawing,
    norm: PNorm,
) -> Result<GadgetInstance> {
    let report = validate_source(&src.graph, drawing);
    if !report.ok {
        return Err(Error::InvalidDrawing(report.reasons.join("; ")));
    }
    let delta = src.delta();
    if let Some(sep) = min_parallel_separation(drawing) {
        if sep < delta {
            return Err(Error::InvalidDrawing(format!(
                "parallel separation {sep} is below Δ = {delta}; scale the drawing first"
            )));
        }
    }
    let g = &src.graph;
    let mut terminals = Vec::new();
    for &w in &src.w {
        let label = g.label(w);
        terminals.push(GadgetTerminal {
            id: format!("w:{label}"),
            pos: place(norm, drawing.vertex_pos[label]),
            role: GadgetRole::WTerminal { w: label.into() },
        });
    }
    let mut regions = Vec::new();
    for &u in &src.u {
        let ul = g.label(u);
        let mut arms = Vec::new();
        let mut pair_spots = vec![drawing.vertex_pos[ul]];
        let mut tips = Vec::new();
        for &w in g.neighbors(u) {
            let wl = g.label(w);
            let route = drawing.route(ul, wl).expect("validated").from_end(ul);
            let len = route.iter().len();
            let total: i64 = route
                .windows(2)
                .map(|s| (s[1][0] - s[0][0]).abs() + (s[1][1] - s[0][1]).abs())
                .sum();
            if total < 4 {
                return Err(Error::InvalidDrawing(format!(
                    "grid path {ul}-{wl} has length {total} < 4"
                )));
            }
            let last = &route[len - 2..];
            let last_len = (last[1][0] - last[0][0]).abs() + (last[1][1] - last[0][1]).abs();
            if last_len < 2 {
                return Err(Error::InvalidDrawing(format!(
                    "grid path {ul}-{wl} bends within 2 units of {wl}"
                )));
            }
            let tip = point_along(&route, total - 2);
            tips.push(GadgetTerminal {
                id: format!("tip:{ul}:{wl}"),
                pos: place(norm, tip),
                role: GadgetRole::Tip {
                    u: ul.into(),
                    w: wl.into(),
                },
            });
            pair_spots.extend((1..=total - 3).map(|t| point_along(&route, t)));
            arms.push(prefix_along(&route, total - 2));
        }
        terminals.extend(tips);
        for (index, spot) in pair_spots.into_iter().enumerate() {
            for side in 0..2 {
                terminals.push(GadgetTerminal {
                    id: format!("pair:{ul}:{index}:{side}"),
                    pos: place(norm, spot),
                    role: GadgetRole::PairMember {
                        u: ul.into(),
                        index,
                        twin: format!("pair:{ul}:{index}:{}", 1 - side),
                    },
                });
            }
        }
        regions.push(Region { u: ul.into(), arms });
    }
    Ok(GadgetInstance {
        terminals,
        k: 2 * src.n,
        norm,
        delta,
        source: src.clone(),
        drawing: drawing.clone(),
        regions,
    })
}

/// Validates, scales and builds in one step.
pub fn reduce(
    graph: &crate::graph::Graph,
    drawing: &OrthoDrawing,
    norm: PNorm,
) -> Result<GadgetInstance> {
    let report = validate_source(graph, drawing);
    if !report.ok {
        return Err(Error::InvalidDrawing(report.reasons.join("; ")));
    }
    let src = SourceGraph::new(graph.clone())?;
    let (scaled, _) = super::source::scale_drawing(drawing, src.n)?;
    build_instance(&src, &scaled, norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::fixtures::q3_fixture;

    #[test]
    fn q3_counts() {
        let (g, d) = q3_fixture();
        let inst = reduce(&g, &d, PNorm::L2).unwrap();
        assert_eq!(inst.k, 8);
        assert_eq!(inst.delta, 18);
        let count = |f: fn(&GadgetRole) -> bool| inst.terminals.iter().filter(|t| f(&t.role)).count();
        assert_eq!(count(|r| matches!(r, GadgetRole::WTerminal { .. })), 4);
        assert_eq!(count(|r| r.is_tip()), 12);
        // Pairs per region: Σ (L_s − 2) − 2 over its three routes.
        for &u in &inst.source.u {
            let ul = g.label(u);
            let expected: i64 = g
                .neighbors(u)
                .iter()
                .map(|&w| inst.drawing.route(ul, g.label(w)).unwrap().length() - 2)
                .sum::<i64>()
                - 2;
            let got = inst
                .terminals
                .iter()
                .filter(|t| matches!(&t.role, GadgetRole::PairMember { u, .. } if u == ul))
                .count();
            assert_eq!(got as i64, 2 * expected, "{ul}");
        }
    }

    #[test]
    fn unscaled_drawing_is_rejected() {
        let (g, d) = q3_fixture();
        let src = SourceGraph::new(g).unwrap();
        assert!(build_instance(&src, &d, PNorm::L2).is_err());
    }

    #[test]
    fn walking_routes() {
        let r = [[0, 0], [3, 0], [3, 2]];
        assert_eq!(point_along(&r, 4), [3, 1]);
        assert_eq!(prefix_along(&r, 4), vec![[0, 0], [3, 0], [3, 1]]);
        assert_eq!(prefix_along(&r, 3), vec![[0, 0], [3, 0]]);
    }
}
