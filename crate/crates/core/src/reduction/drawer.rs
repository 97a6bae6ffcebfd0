use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::source::{validate_source, GridPoint, OrthoDrawing, Route};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph the drawer accepts.
pub const DRAWER_MAX_VERTICES: usize = 20;
const ATTEMPTS: u64 = 40;
/// Rip-up rounds per placement: a failed edge moves to the front.
const RIPUPS: usize = 20;
const MAX_FACE_LEN: usize = 10;
const TUTTE_SWEEPS: usize = 2000;
const SPACING: i64 = 6;
const BEND_COST: u64 = 3;

/// Best-effort orthogonal grid drawing of a small graph.
///
/// Vertices are placed by a barycentric (Tutte) layout around a peripheral
/// cycle, rank-compressed onto a grid, with breadth-first and shuffled
/// slot placements as fallbacks. Edges are routed one at a time by a
/// bend-penalised shortest path that avoids every lattice point already in
/// use; an edge that cannot be routed is moved to the front and routing
/// restarts. Routes on the integer lattice can only meet at lattice points, so a
/// complete routing is crossing-free. The result is always passed through
/// [`validate_source`]; failure to find a drawing is an error, not evidence
/// of non-planarity.
pub fn draw_orthogonal(g: &Graph) -> Result<OrthoDrawing> {
    let n = g.len();
    if n > DRAWER_MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "drawer handles at most {DRAWER_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let side = (n as f64).sqrt().ceil().max(1.0) as i64;
    let slots: Vec<GridPoint> = (0..side * side)
        .map(|i| [(i % side) * SPACING, (i / side) * SPACING])
        .collect();
    let mut last_problem = String::from("no attempt made");
    let mut placements: Vec<(Vec<GridPoint>, i64)> = Vec::new();
    if let Some(p) = tutte_placement(g) {
        placements.push((p, n as i64));
    }
    for attempt in 0..ATTEMPTS {
        let order = if (attempt as usize) < n {
            bfs_order(g, attempt as usize)
        } else {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(&mut ChaCha8Rng::seed_from_u64(attempt));
            o
        };
        let mut pos = vec![[0, 0]; n];
        for (slot, &v) in order.iter().enumerate() {
            pos[v] = slots[slot];
        }
        placements.push((pos, side));
    }
    for (attempt, (pos, side)) in placements.into_iter().enumerate() {
        match route_all(g, &pos, side, attempt as u64) {
            Some(d) => {
                let report = validate_source(g, &d);
                if report.ok {
                    return Ok(d);
                }
                last_problem = report.reasons.join("; ");
            }
            None => last_problem = "some edge could not be routed".into(),
        }
    }
    Err(Error::InvalidDrawing(format!(
        "no orthogonal drawing found in {ATTEMPTS} attempts ({last_problem})"
    )))
}

/// Induced cycles whose removal leaves the rest connected; in a
/// 3-connected planar graph these are exactly the faces.
fn peripheral_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.len();
    let mut best: Option<Vec<usize>> = None;
    fn extend(g: &Graph, path: &mut Vec<usize>, on: &mut [bool], found: &mut Vec<Vec<usize>>) {
        let (s, last) = (path[0], *path.last().unwrap());
        for &w in g.neighbors(last) {
            if w == s && path.len() >= 3 && path[1] < last {
                found.push(path.clone());
            }
            if w > s && !on[w] && path.len() < MAX_FACE_LEN {
                on[w] = true;
                path.push(w);
                extend(g, path, on, found);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut cycles = Vec::new();
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        extend(g, &mut vec![s], &mut on, &mut cycles);
    }
    for c in cycles {
        let mut inside = vec![false; n];
        for &v in &c {
            inside[v] = true;
        }
        let chords = c.iter().any(|&v| {
            g.neighbors(v).iter().filter(|&&w| inside[w]).count() > 2
        });
        if chords {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
        if rest.is_empty() {
            continue;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![rest[0]];
        seen[rest[0]] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !inside[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if rest.iter().all(|&v| seen[v]) && best.as_ref().is_none_or(|b| c.len() > b.len()) {
            best = Some(c);
        }
    }
    best
}

/// Barycentric layout with a peripheral cycle fixed on a circle, then
/// rank-compressed per axis onto the grid.
fn tutte_placement(g: &Graph) -> Option<Vec<GridPoint>> {
    let n = g.len();
    let face = peripheral_cycle(g)?;
    let mut fixed = vec![false; n];
    let mut xy = vec![[0.0f64; 2]; n];
    for (i, &v) in face.iter().enumerate() {
        let t = i as f64 / face.len() as f64 * std::f64::consts::TAU;
        xy[v] = [t.cos(), t.sin()];
        fixed[v] = true;
    }
    for _ in 0..TUTTE_SWEEPS {
        for v in 0..n {
            if fixed[v] || g.degree(v) == 0 {
                continue;
            }
            let mut c = [0.0; 2];
            for &w in g.neighbors(v) {
                c[0] += xy[w][0];
                c[1] += xy[w][1];
            }
            let d = g.degree(v) as f64;
            xy[v] = [c[0] / d, c[1] / d];
        }
    }
    let rank = |k: usize| {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| xy[a][k].total_cmp(&xy[b][k]).then(a.cmp(&b)));
        let mut r = vec![0i64; n];
        for (i, &v) in idx.iter().enumerate() {
            r[v] = i as i64;
        }
        r
    };
    let (rx, ry) = (rank(0), rank(1));
    Some((0..n).map(|v| [rx[v] * SPACING, ry[v] * SPACING]).collect())
}

fn bfs_order(g: &Graph, root: usize) -> Vec<usize> {
    let mut seen = vec![false; g.len()];
    let mut order = Vec::new();
    for s in std::iter::once(root).chain(0..g.len()) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

const DIRS: [[i64; 2]; 4] = [[1, 0], [0, 1], [-1, 0], [0, -1]];

fn route_all(g: &Graph, pos: &[GridPoint], side: i64, attempt: u64) -> Option<OrthoDrawing> {
    let lo = -2 * SPACING;
    let hi = (side + 1) * SPACING;
    // The four lattice neighbours of a vertex are its ports, reserved for
    // its own edges.
    let port_owner = |q: GridPoint| {
        pos.iter()
            .position(|p| (p[0] - q[0]).abs() + (p[1] - q[1]).abs() == 1)
    };
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let manhattan = |&(a, b): &(usize, usize)| (pos[a][0] - pos[b][0]).abs() + (pos[a][1] - pos[b][1]).abs();
    edges.sort_by_key(|e| (manhattan(e), *e));
    if attempt % 2 == 1 {
        edges.shuffle(&mut ChaCha8Rng::seed_from_u64(attempt ^ 0x5eed));
    }
    let mut routes = None;
    'rounds: for _ in 0..RIPUPS {
        let mut used: HashSet<GridPoint> = pos.iter().copied().collect();
        let mut done = Vec::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            let blocked = |q: GridPoint| {
                used.contains(&q) || port_owner(q).is_some_and(|v| v != a && v != b)
            };
            let Some(path) = shortest_route(pos[a], pos[b], &blocked, lo, hi) else {
                let e = edges.remove(i);
                edges.insert(0, e);
                continue 'rounds;
            };
            for p in &path[1..path.len() - 1] {
                used.insert(*p);
            }
            done.push(Route {
                u: g.label(a).to_string(),
                v: g.label(b).to_string(),
                points: corners(&path),
            });
        }
        routes = Some(done);
        break;
    }
    let routes = routes?;
    let vertex_pos: BTreeMap<String, GridPoint> = (0..g.len()).map(|v| (g.label(v).to_string(), pos[v])).collect();
    Some(OrthoDrawing { vertex_pos, routes })
}

/// Dijkstra over (point, heading) with unit steps and a bend penalty.
fn shortest_route(
    from: GridPoint,
    to: GridPoint,
    blocked: &dyn Fn(GridPoint) -> bool,
    lo: i64,
    hi: i64,
) -> Option<Vec<GridPoint>> {
    type State = (GridPoint, usize);
    let mut dist: BTreeMap<State, u64> = BTreeMap::new();
    let mut prev: BTreeMap<State, State> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    for d in 0..4 {
        dist.insert((from, d), 0);
        heap.push(Reverse((0u64, from, d)));
    }
    while let Some(Reverse((c, p, d))) = heap.pop() {
        if dist.get(&(p, d)).is_some_and(|&best| best < c) {
            continue;
        }
        if p == to {
            let mut path = vec![p];
            let mut s = (p, d);
            while let Some(&q) = prev.get(&s) {
                path.push(q.0);
                s = q;
            }
            path.reverse();
            return Some(path);
        }
        for (nd, step) in DIRS.iter().enumerate() {
            let q = [p[0] + step[0], p[1] + step[1]];
            if q[0] < lo || q[0] > hi || q[1] < lo || q[1] > hi {
                continue;
            }
            if q != to && blocked(q) {
                continue;
            }
            let bend = if p != from && nd != d { BEND_COST } else { 0 };
            let nc = c + 1 + bend;
            if dist.get(&(q, nd)).is_none_or(|&best| nc < best) {
                dist.insert((q, nd), nc);
                prev.insert((q, nd), (p, d));
                heap.push(Reverse((nc, q, nd)));
            }
        }
    }
    None
}

/// Keeps only the end points and the bends of a unit-step path.
fn corners(path: &[GridPoint]) -> Vec<GridPoint> {
    let mut out = vec![path[0]];
    for w in path.windows(3) {
        let d1 = [w[1][0] - w[0][0], w[1][1] - w[0][1]];
        let d2 = [w[2][0] - w[1][0], w[2][1] - w[1][1]];
        if d1 != d2 {
            out.push(w[1]);
        }
    }
    out.push(*path.last().unwrap());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::{prism, q3};

    #[test]
    fn draws_cube_and_prisms() {
        for g in [q3(), prism(4), prism(6)] {
            let d = draw_orthogonal(&g).unwrap();
            let r = validate_source(&g, &d);
            assert!(r.ok, "{:?}", r.reasons);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(draw_orthogonal(&q3()).unwrap(), draw_orthogonal(&q3()).unwrap());
    }

    #[test]
    fn corners_compress_straight_runs() {
        let p = [[0, 0], [1, 0], [2, 0], [2, 1], [2, 2]];
        assert_eq!(corners(&p), vec![[0, 0], [2, 0], [2, 2]]);
    }
}
