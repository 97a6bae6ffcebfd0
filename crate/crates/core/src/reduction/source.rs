use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{is_biconnected, validate_cubic_bipartite, Graph};

/// An integer grid point.
pub type GridPoint = [i64; 2];

/// The grid path drawn for the edge `u`–`v`, listed from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub u: String,
    pub v: String,
    pub points: Vec<GridPoint>,
}

impl Route {
    /// Route points oriented to start at `from`.
    pub fn from_end(&self, from: &str) -> Vec<GridPoint> {
        if self.u == from {
            self.points.clone()
        } else {
            self.points.iter().rev().copied().collect()
        }
    }

    /// Total grid length.
    pub fn length(&self) -> i64 {
        self.points
            .windows(2)
            .map(|w| (w[1][0] - w[0][0]).abs() + (w[1][1] - w[0][1]).abs())
            .sum()
    }
}

/// An orthogonal grid drawing: integer vertex positions and axis-parallel
/// polyline routes for the edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrthoDrawing {
    pub vertex_pos: BTreeMap<String, GridPoint>,
    pub routes: Vec<Route>,
}

impl OrthoDrawing {
    pub fn route(&self, a: &str, b: &str) -> Option<&Route> {
        self.routes
            .iter()
            .find(|r| (r.u == a && r.v == b) || (r.u == b && r.v == a))
    }

    /// Every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: i64) -> OrthoDrawing {
        let s = |p: &GridPoint| [p[0] * factor, p[1] * factor];
        OrthoDrawing {
            vertex_pos: self.vertex_pos.iter().map(|(k, p)| (k.clone(), s(p))).collect(),
            routes: self
                .routes
                .iter()
                .map(|r| Route {
                    u: r.u.clone(),
                    v: r.v.clone(),
                    points: r.points.iter().map(s).collect(),
                })
                .collect(),
        }
    }

    /// All segments, tagged with their route index and position in it.
    fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for (r, route) in self.routes.iter().enumerate() {
            for (i, w) in route.points.windows(2).enumerate() {
                out.push(Segment {
                    route: r,
                    index: i,
                    a: w[0],
                    b: w[1],
                });
            }
        }
        out
    }
}

/// A validated 2-connected cubic bipartite source graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceGraph {
    pub graph: Graph,
    /// The colour class containing the first vertex.
    pub u: Vec<usize>,
    pub w: Vec<usize>,
    pub n: usize,
}

impl SourceGraph {
    pub fn new(graph: Graph) -> Result<SourceGraph> {
        let part = validate_cubic_bipartite(&graph).map_err(Error::InvalidGraph)?;
        if !is_biconnected(&graph) {
            return Err(Error::InvalidGraph("not 2-connected".into()));
        }
        let n = part.u.len();
        Ok(SourceGraph {
            graph,
            u: part.u,
            w: part.w,
            n,
        })
    }

    pub fn is_u(&self, v: usize) -> bool {
        self.u.binary_search(&v).is_ok()
    }

    /// `Δ = 4n + 2`.
    pub fn delta(&self) -> i64 {
        4 * self.n as i64 + 2
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub reasons: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    route: usize,
    index: usize,
    a: GridPoint,
    b: GridPoint,
}

impl Segment {
    fn horizontal(&self) -> bool {
        self.a[1] == self.b[1]
    }

    fn range(&self, k: usize) -> (i64, i64) {
        (self.a[k].min(self.b[k]), self.a[k].max(self.b[k]))
    }

    /// Lattice-free description of the intersection: `None` if disjoint,
    /// otherwise the bounding box of the common part.
    fn intersection(&self, other: &Segment) -> Option<(GridPoint, GridPoint)> {
        let (ax, bx) = (self.range(0), other.range(0));
        let (ay, by) = (self.range(1), other.range(1));
        let lo = [ax.0.max(bx.0), ay.0.max(by.0)];
        let hi = [ax.1.min(bx.1), ay.1.min(by.1)];
        (lo[0] <= hi[0] && lo[1] <= hi[1]).then_some((lo, hi))
    }

    /// ℓ∞ distance between the two segments.
    fn linf_distance(&self, other: &Segment) -> i64 {
        let gap = |k: usize| {
            let (a, b) = (self.range(k), other.range(k));
            (b.0 - a.1).max(a.0 - b.1).max(0)
        };
        gap(0).max(gap(1))
    }
}

/// Checks the source graph (cubic, bipartite, balanced, 2-connected) and the
/// drawing (positions, axis-parallel routes with matching endpoints, and no
/// two routes meeting except at a shared end vertex, which certifies
/// planarity).
pub fn validate_source(g: &Graph, drawing: &OrthoDrawing) -> ValidationReport {
    let mut reasons = Vec::new();
    if let Err(e) = validate_cubic_bipartite(g) {
        reasons.push(e);
    } else if !is_biconnected(g) {
        reasons.push("not 2-connected".into());
    }
    reasons.extend(drawing_problems(g, drawing));
    ValidationReport {
        ok: reasons.is_empty(),
        reasons,
    }
}

fn drawing_problems(g: &Graph, d: &OrthoDrawing) -> Vec<String> {
    let mut reasons = Vec::new();
    let mut used: BTreeMap<GridPoint, &str> = BTreeMap::new();
    for v in g.labels() {
        match d.vertex_pos.get(v) {
            None => reasons.push(format!("vertex {v:?} has no position")),
            Some(p) => {
                if let Some(other) = used.insert(*p, v) {
                    reasons.push(format!("vertices {other:?} and {v:?} share position {p:?}"));
                }
            }
        }
    }
    for v in d.vertex_pos.keys() {
        if g.index_of(v).is_none() {
            reasons.push(format!("drawing has unknown vertex {v:?}"));
        }
    }
    let mut drawn: BTreeSet<(usize, usize)> = BTreeSet::new();
    for r in &d.routes {
        let (Some(a), Some(b)) = (g.index_of(&r.u), g.index_of(&r.v)) else {
            reasons.push(format!("route {:?}-{:?} names an unknown vertex", r.u, r.v));
            continue;
        };
        if !g.has_edge(a, b) {
            reasons.push(format!("route {:?}-{:?} is not an edge", r.u, r.v));
        }
        if !drawn.insert((a.min(b), a.max(b))) {
            reasons.push(format!("edge {:?}-{:?} routed twice", r.u, r.v));
        }
        if r.points.len() < 2 {
            reasons.push(format!("route {:?}-{:?} has fewer than 2 points", r.u, r.v));
            continue;
        }
        if d.vertex_pos.get(&r.u) != r.points.first() || d.vertex_pos.get(&r.v) != r.points.last() {
            reasons.push(format!("route {:?}-{:?} endpoints do not match", r.u, r.v));
        }
        for w in r.points.windows(2) {
            let same = w[0] == w[1];
            let axis = w[0][0] == w[1][0] || w[0][1] == w[1][1];
            if same || !axis {
                reasons.push(format!(
                    "route {:?}-{:?}: segment {:?}-{:?} is not axis-parallel",
                    r.u, r.v, w[0], w[1]
                ));
            }
        }
    }
    for &(a, b) in g.edges() {
        if !drawn.contains(&(a, b)) {
            reasons.push(format!("edge {:?}-{:?} has no route", g.label(a), g.label(b)));
        }
    }
    if !reasons.is_empty() {
        return reasons;
    }
    // Pairwise intersection test.
    let segs = d.segments();
    let vertex_points: BTreeSet<GridPoint> = d.vertex_pos.values().copied().collect();
    for (i, s) in segs.iter().enumerate() {
        // No route may pass through a vertex other than at its own ends.
        for p in &vertex_points {
            let inside = s.range(0).0 <= p[0]
                && p[0] <= s.range(0).1
                && s.range(1).0 <= p[1]
                && p[1] <= s.range(1).1;
            let own_end = {
                let r = &d.routes[s.route];
                let last = r.points.len() - 2;
                (s.index == 0 && *p == s.a) || (s.index == last && *p == s.b)
            };
            if inside && !own_end {
                let r = &d.routes[s.route];
                reasons.push(format!(
                    "crossing: route {:?}-{:?} passes through vertex at {p:?}",
                    r.u, r.v
                ));
            }
        }
        for t in &segs[i + 1..] {
            let Some((lo, hi)) = s.intersection(t) else {
                continue;
            };
            let single = lo == hi;
            let allowed = if s.route == t.route {
                single && t.index == s.index + 1 && lo == s.b
            } else {
                let (rs, rt) = (&d.routes[s.route], &d.routes[t.route]);
                single
                    && vertex_points.contains(&lo)
                    && [&rs.u, &rs.v].iter().any(|x| d.vertex_pos[*x] == lo)
                    && [&rt.u, &rt.v].iter().any(|x| d.vertex_pos[*x] == lo)
            };
            if !allowed {
                let (rs, rt) = (&d.routes[s.route], &d.routes[t.route]);
                reasons.push(format!(
                    "crossing: routes {:?}-{:?} and {:?}-{:?} meet at {lo:?}",
                    rs.u, rs.v, rt.u, rt.v
                ));
            }
        }
    }
    reasons.sort();
    reasons.dedup();
    reasons
}

/// Minimum ℓ∞ distance between two parallel segments that do not touch.
/// `None` if there is no such pair.
pub fn min_parallel_separation(d: &OrthoDrawing) -> Option<i64> {
    let segs = d.segments();
    let mut best: Option<i64> = None;
    for (i, s) in segs.iter().enumerate() {
        for t in &segs[i + 1..] {
            if s.horizontal() != t.horizontal() || s.intersection(t).is_some() {
                continue;
            }
            let dist = s.linf_distance(t);
            best = Some(best.map_or(dist, |b| b.min(dist)));
        }
    }
    best
}

/// Scales `drawing` by the smallest positive integer making every parallel
/// separation at least `Δ = 4n + 2`. Returns the scaled drawing and factor.
pub fn scale_drawing(drawing: &OrthoDrawing, n: usize) -> Result<(OrthoDrawing, i64)> {
    let delta = 4 * n as i64 + 2;
    let segs = drawing.segments();
    for (i, s) in segs.iter().enumerate() {
        for t in &segs[i + 1..] {
            if s.horizontal() == t.horizontal() {
                if let Some((lo, hi)) = s.intersection(t) {
                    if lo != hi {
                        return Err(Error::InvalidDrawing(format!(
                            "overlapping segments {:?}-{:?} and {:?}-{:?}",
                            s.a, s.b, t.a, t.b
                        )));
                    }
                }
            }
        }
    }
    let factor = match min_parallel_separation(drawing) {
        Some(0) => unreachable!("non-touching segments are at distance ≥ 1"),
        Some(sep) => ((delta + sep - 1) / sep).max(1),
        None => 1,
    };
    Ok((drawing.scaled(factor), factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::fixtures::q3_fixture;

    #[test]
    fn q3_fixture_is_valid_and_scales_by_18() {
        let (g, d) = q3_fixture();
        let r = validate_source(&g, &d);
        assert!(r.ok, "{:?}", r.reasons);
        assert_eq!(min_parallel_separation(&d), Some(1));
        let (scaled, f) = scale_drawing(&d, 4).unwrap();
        assert_eq!(f, 18);
        assert_eq!(min_parallel_separation(&scaled), Some(18));
        let (again, f2) = scale_drawing(&scaled, 4).unwrap();
        assert_eq!(f2, 1);
        assert_eq!(again, scaled);
    }

    #[test]
    fn delta_for_n1() {
        let d = OrthoDrawing {
            vertex_pos: BTreeMap::new(),
            routes: vec![
                Route {
                    u: "a".into(),
                    v: "b".into(),
                    points: vec![[0, 0], [1, 0]],
                },
                Route {
                    u: "c".into(),
                    v: "d".into(),
                    points: vec![[0, 1], [1, 1]],
                },
            ],
        };
        assert_eq!(scale_drawing(&d, 1).unwrap().1, 6);
    }

    #[test]
    fn four_cycle_is_not_cubic() {
        let g = Graph::with_size(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = validate_source(&g, &OrthoDrawing::default());
        assert!(!r.ok);
        assert!(r.reasons[0].starts_with("not cubic"));
    }

    #[test]
    fn crossing_routes_are_rejected() {
        let (g, mut d) = q3_fixture();
        // Re-route a–e straight through the inner square to g's side.
        let r = d.routes.iter_mut().find(|r| r.u == "a" && r.v == "e").unwrap();
        r.points = vec![[3, 0], [3, 1], [5, 1], [5, 3], [3, 3], [3, 2]];
        let rep = validate_source(&g, &d);
        assert!(!rep.ok);
        assert!(rep.reasons.iter().any(|x| x.starts_with("crossing")), "{:?}", rep.reasons);
    }
}
