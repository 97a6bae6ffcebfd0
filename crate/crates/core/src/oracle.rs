//! Brute-force reference implementations used to cross-check the solvers.
//!
//! Each oracle is deliberately naive and shares no code with the function
//! it checks: plain floats or machine integers, closed forms, exhaustive
//! enumeration or dense grids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::PNorm;
use crate::graph::{disjoint_paths_adj, Graph};

/// Lattice size per axis, zoom levels and the half-width (in steps) of the
/// window kept around the best lattice point of [`grid_sec_radius`].
pub const GRID_N: usize = 64;
pub const GRID_LEVELS: usize = 45;
pub const GRID_WINDOW: f64 = 16.0;

fn dist(norm: PNorm, a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = ((a[0] - b[0]).abs(), (a[1] - b[1]).abs());
    match norm {
        PNorm::Infinity => dx.max(dy),
        _ => {
            let p = norm.exponent();
            (dx.powf(p) + dy.powf(p)).powf(1.0 / p)
        }
    }
}

fn bbox(points: &[[f64; 2]]) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, hi)
}

/// Smallest enclosing ℓp disc radius by dense grid search over centres.
///
/// Each level scans a square `GRID_N × GRID_N` lattice and zooms onto a
/// window of ±`GRID_WINDOW` steps around the incumbent, halving the window. The wide
/// window matters near ridges of the objective (two far points on a
/// diagonal), where the best lattice point can sit many steps from the
/// optimum.
pub fn grid_sec_radius(points: &[[f64; 2]], norm: PNorm) -> f64 {
    let f = |c: [f64; 2]| points.iter().map(|&p| dist(norm, c, p)).fold(0.0, f64::max);
    let (lo, hi) = bbox(points);
    // Square cells: an elongated box gives elongated cells, and the best
    // lattice point then drifts along the fine axis.
    let mut centre = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    let mut half = (hi[0] - lo[0]).max(hi[1] - lo[1]) / 2.0;
    let mut best = f(centre);
    for _ in 0..GRID_LEVELS {
        let step = 2.0 * half / (GRID_N - 1) as f64;
        let origin = [centre[0] - half, centre[1] - half];
        let mut arg = centre;
        for i in 0..GRID_N {
            for j in 0..GRID_N {
                let c = [origin[0] + i as f64 * step, origin[1] + j as f64 * step];
                let v = f(c);
                if v < best {
                    best = v;
                    arg = c;
                }
            }
        }
        centre = arg;
        half = GRID_WINDOW * step;
    }
    best
}

/// Smallest enclosing disc radius for p ∈ {1, 2, ∞} by closed forms:
/// half the larger coordinate span for ∞, the same after the rotation
/// `(x + y, x − y)` for 1, and for 2 the smallest circle through a pair
/// (as diameter) or a triple (as circumcircle) that covers every point.
pub fn brute_sec_radius(points: &[[f64; 2]], norm: PNorm) -> f64 {
    let half_span = |pts: &[[f64; 2]]| {
        let (lo, hi) = bbox(pts);
        (hi[0] - lo[0]).max(hi[1] - lo[1]) / 2.0
    };
    match norm {
        PNorm::Infinity => half_span(points),
        PNorm::Finite { num: 1, den: 1 } => {
            let rotated: Vec<[f64; 2]> = points.iter().map(|p| [p[0] + p[1], p[0] - p[1]]).collect();
            half_span(&rotated)
        }
        PNorm::Finite { num: 2, den: 1 } => {
            let covers = |c: [f64; 2], r: f64| points.iter().all(|&p| dist(norm, c, p) <= r * (1.0 + 1e-12) + 1e-12);
            let n = points.len();
            if n < 2 {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = (points[i], points[j]);
                    let c = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
                    let r = dist(norm, c, a);
                    if r < best && covers(c, r) {
                        best = r;
                    }
                    for &q in &points[j + 1..] {
                        if let Some(c) = circumcentre(a, b, q) {
                            let r = dist(norm, c, a);
                            if r < best && covers(c, r) {
                                best = r;
                            }
                        }
                    }
                }
            }
            best
        }
        other => panic!("brute_sec_radius supports p ∈ {{1, 2, ∞}}, got {other}"),
    }
}

fn circumcentre(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Option<[f64; 2]> {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if d.abs() < 1e-12 {
        return None;
    }
    let (a2, b2, c2) = (a[0] * a[0] + a[1] * a[1], b[0] * b[0] + b[1] * b[1], c[0] * c[0] + c[1] * c[1]);
    Some([
        (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d,
        (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d,
    ])
}

/// Hamiltonian cycles counted over all vertex permutations fixing vertex 0;
/// each undirected cycle is seen twice.
pub fn permutation_hamiltonian_count(g: &Graph) -> usize {
    let n = g.len();
    if n < 3 {
        return 0;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut count = 0;
    // Heap's algorithm.
    let mut c = vec![0usize; rest.len()];
    let check = |perm: &[usize]| {
        let mut prev = 0;
        for &v in perm {
            if !g.has_edge(prev, v) {
                return false;
            }
            prev = v;
        }
        g.has_edge(prev, 0)
    };
    if check(&rest) {
        count += 1;
    }
    let mut i = 0;
    while i < rest.len() {
        if c[i] < i {
            if i % 2 == 0 {
                rest.swap(0, i);
            } else {
                rest.swap(c[i], i);
            }
            if check(&rest) {
                count += 1;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    count / 2
}

/// Biconnectivity of a graph on at most 32 vertices given as neighbour
/// bitmasks: at least three vertices, connected, and connected after
/// deleting any one vertex.
pub fn bitmask_biconnected(adj: &[u32]) -> bool {
    let n = adj.len();
    if n < 3 {
        return false;
    }
    let all: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let connected = |alive: u32| {
        let start = alive.trailing_zeros();
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & alive & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == alive
    };
    connected(all) && (0..n).all(|v| connected(all & !(1 << v)))
}

/// Exact comparison key of an integer vector: `|dx| + |dy|`, `dx² + dy²`
/// or `max(|dx|, |dy|)`. Only p ∈ {1, 2, ∞}.
pub fn int_key(norm: PNorm, a: [i64; 2], b: [i64; 2]) -> i128 {
    let (dx, dy) = (((a[0] - b[0]) as i128).abs(), ((a[1] - b[1]) as i128).abs());
    match norm {
        PNorm::Finite { num: 1, den: 1 } => dx + dy,
        PNorm::Finite { num: 2, den: 1 } => dx * dx + dy * dy,
        PNorm::Infinity => dx.max(dy),
        other => panic!("int_key supports p ∈ {{1, 2, ∞}}, got {other}"),
    }
}

/// Minimum bottleneck of a 2-connected spanning subgraph without Steiner
/// points, by exhaustive subset search: with edges sorted by length, the
/// optimum is the first edge `j` such that some subset of the edges before
/// `j`, together with `j`, is 2-connected. Returns the key of that edge.
pub fn brute_force_2conn_key(points: &[[i64; 2]], norm: PNorm) -> Option<i128> {
    let n = points.len();
    assert!(n <= 8, "exhaustive search is for tiny instances");
    let mut edges: Vec<(i128, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((int_key(norm, points[a], points[b]), a, b));
        }
    }
    edges.sort();
    for j in 0..edges.len() {
        for mask in 0u64..(1 << j) {
            let mut adj = vec![0u32; n];
            let mut add = |a: usize, b: usize| {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            };
            add(edges[j].1, edges[j].2);
            for (i, e) in edges[..j].iter().enumerate() {
                if mask >> i & 1 == 1 {
                    add(e.1, e.2);
                }
            }
            if bitmask_biconnected(&adj) {
                return Some(edges[j].0);
            }
        }
    }
    None
}

/// Minimum bottleneck of a 2-connected network on fixed points: add edges
/// in length order until the graph is 2-connected.
fn threshold_value(points: &[[f64; 2]], norm: PNorm) -> f64 {
    let n = points.len();
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            edges.push((dist(norm, points[a], points[b]), a, b));
        }
    }
    edges.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut adj = vec![0u32; n];
    for (d, a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
        if bitmask_biconnected(&adj) {
            return d;
        }
    }
    f64::INFINITY
}

/// Candidates kept from the coarse level of [`grid_steiner_2conn`].
pub const STEINER_STARTS: usize = 64;
/// Coarse lattice size per coordinate.
pub const STEINER_COARSE: usize = 24;
/// Zoom rounds per start.
pub const STEINER_ROUNDS: usize = 60;
/// Directions tried when moving a single Steiner point.
pub const STEINER_DIRECTIONS: usize = 32;
/// Candidates given the random polish, its scales and trials per scale.
pub const STEINER_POLISHED: usize = 4;
pub const STEINER_POLISH_LEVELS: usize = 40;
pub const STEINER_POLISH_TRIALS: usize = 400;

/// Optimal bottleneck of a 2-connected network on `terminals` with at most
/// `k ≤ 2` Steiner points, by grid search over Steiner placements. For
/// each placement every topology is covered at once: the best 2-connected
/// network on fixed points is the threshold graph.
pub fn grid_steiner_2conn(terminals: &[[f64; 2]], k: usize, norm: PNorm) -> f64 {
    assert!(k <= 2, "grid oracle handles k ≤ 2");
    let mut best = threshold_value(terminals, norm);
    let (lo, hi) = bbox(terminals);
    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
    let (lo, hi) = ([lo[0] - pad, lo[1] - pad], [hi[0] + pad, hi[1] + pad]);
    for s in 1..=k {
        let dims = 2 * s;
        let eval = |x: &[f64]| {
            let mut pts = terminals.to_vec();
            for j in 0..s {
                pts.push([x[2 * j], x[2 * j + 1]]);
            }
            threshold_value(&pts, norm)
        };
        // Coarse lattice over the padded box.
        let axis = |d: usize, i: usize| {
            let k = d % 2;
            lo[k] + (hi[k] - lo[k]) * i as f64 / (STEINER_COARSE - 1) as f64
        };
        let total = STEINER_COARSE.pow(dims as u32);
        let mut scored: Vec<(f64, Vec<f64>)> = Vec::with_capacity(total);
        for idx in 0..total {
            let mut x = vec![0.0; dims];
            let mut r = idx;
            for (d, xd) in x.iter_mut().enumerate() {
                *xd = axis(d, r % STEINER_COARSE);
                r /= STEINER_COARSE;
            }
            scored.push((eval(&x), x));
        }
        scored.sort_by(|a, b| a.0.total_cmp(&b.0));
        let coarse_step = [
            (hi[0] - lo[0]) / (STEINER_COARSE - 1) as f64,
            (hi[1] - lo[1]) / (STEINER_COARSE - 1) as f64,
        ];
        let mut finals: Vec<(f64, Vec<f64>)> = Vec::with_capacity(STEINER_STARTS);
        for (v0, x0) in scored.into_iter().take(STEINER_STARTS) {
            let (mut v, mut x) = (v0, x0);
            let mut step: Vec<f64> = (0..dims).map(|d| coarse_step[d % 2]).collect();
            for _ in 0..STEINER_ROUNDS {
                let mut bx = x.clone();
                let mut bv = v;
                let mut try_move = |y: Vec<f64>| {
                    let fy = eval(&y);
                    if fy < bv {
                        bv = fy;
                        bx = y;
                    }
                };
                // Joint axis moves of every Steiner point, 3 per axis.
                for idx in 0..3usize.pow(dims as u32) {
                    let mut y = x.clone();
                    let mut r = idx;
                    for (d, yd) in y.iter_mut().enumerate() {
                        *yd += (r % 3) as f64 * step[d] - step[d];
                        r /= 3;
                    }
                    try_move(y);
                }
                // Single-point moves in many directions follow narrow ridges.
                for j in 0..s {
                    for a in 0..STEINER_DIRECTIONS {
                        let t = a as f64 / STEINER_DIRECTIONS as f64 * std::f64::consts::TAU;
                        for scale in [1.0, 0.5] {
                            let mut y = x.clone();
                            y[2 * j] += scale * step[2 * j] * t.cos();
                            y[2 * j + 1] += scale * step[2 * j + 1] * t.sin();
                            try_move(y);
                        }
                    }
                }
                if bx == x {
                    for sd in step.iter_mut() {
                        *sd /= 2.0;
                    }
                }
                x = bx;
                v = bv;
            }
            finals.push((v, x));
        }
        // Random joint moves at shrinking scales polish the best few.
        finals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut rng = ChaCha8Rng::seed_from_u64(s as u64);
        for (mut v, mut x) in finals.into_iter().take(STEINER_POLISHED) {
            for level in 0..STEINER_POLISH_LEVELS {
                let h = coarse_step[0].max(coarse_step[1]) * 0.5f64.powi(level as i32);
                for _ in 0..STEINER_POLISH_TRIALS {
                    let y: Vec<f64> = x.iter().map(|&c| c + h * rng.gen_range(-1.0..1.0)).collect();
                    let fy = eval(&y);
                    if fy < v {
                        v = fy;
                        x = y;
                    }
                }
            }
            best = best.min(v);
        }
    }
    best
}

/// Menger-style biconnectivity: at least three vertices and two internally
/// vertex-disjoint paths between every pair.
pub fn menger_biconnected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    n >= 3 && (0..n).all(|u| (u + 1..n).all(|v| disjoint_paths_adj(adj, u, v) >= 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::{k4, prism, q3};

    #[test]
    fn sec_grid_on_right_triangle() {
        let pts = [[0.0, 0.0], [0.0, 2.0], [2.0, 0.0]];
        assert!((grid_sec_radius(&pts, PNorm::L2) - 2f64.sqrt()).abs() < 1e-6);
        assert!((grid_sec_radius(&pts, PNorm::L1) - 2.0).abs() < 1e-6);
        assert!((grid_sec_radius(&pts, PNorm::Infinity) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn sec_grid_agrees_with_closed_forms() {
        let pts = [[5.33, -8.33], [-52.0, -7.5], [-7.857, -13.0], [1.0, 2.0]];
        for norm in [PNorm::L1, PNorm::L2, PNorm::Infinity] {
            let (g, b) = (grid_sec_radius(&pts, norm), brute_sec_radius(&pts, norm));
            assert!((g - b).abs() < 1e-4, "{norm}: grid {g} closed form {b}");
        }
    }

    #[test]
    fn sec_closed_forms_on_right_triangle() {
        let pts = [[0.0, 0.0], [0.0, 2.0], [2.0, 0.0]];
        assert!((brute_sec_radius(&pts, PNorm::L2) - 2f64.sqrt()).abs() < 1e-6);
        assert!((brute_sec_radius(&pts, PNorm::L1) - 2.0).abs() < 1e-6);
        assert!((brute_sec_radius(&pts, PNorm::Infinity) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn hamiltonian_counts() {
        assert_eq!(permutation_hamiltonian_count(&q3()), 6);
        assert_eq!(permutation_hamiltonian_count(&k4()), 3);
        assert_eq!(permutation_hamiltonian_count(&prism(3)), 3);
    }

    #[test]
    fn brute_force_square_and_line() {
        let sq = [[0, 0], [1, 0], [1, 1], [0, 1]];
        assert_eq!(brute_force_2conn_key(&sq, PNorm::L2), Some(1));
        let line = [[0, 0], [1, 0], [2, 0]];
        assert_eq!(brute_force_2conn_key(&line, PNorm::L1), Some(2));
        assert_eq!(brute_force_2conn_key(&[[0, 0], [1, 0]], PNorm::L1), None);
    }

    #[test]
    fn steiner_grid_on_square() {
        let sq = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]];
        assert!((grid_steiner_2conn(&sq, 0, PNorm::L2) - 2.0).abs() < 1e-12);
        // One Steiner point at the centre cannot beat the side length: a
        // 2-connected network still needs a cycle through all corners.
        assert!(grid_steiner_2conn(&sq, 1, PNorm::L2) <= 2.0);
    }

    #[test]
    fn menger_matches_small_cases() {
        assert!(menger_biconnected(k4().adjacency()));
        let path = vec![vec![1], vec![0, 2], vec![1]];
        assert!(!menger_biconnected(&path));
        assert!(bitmask_biconnected(&[0b110, 0b101, 0b011]));
        assert!(!bitmask_biconnected(&[0b010, 0b101, 0b010]));
    }
}
