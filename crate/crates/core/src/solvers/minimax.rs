use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::geometry::{minimax_center, PNorm, Point};
use crate::graph::{Network, Role};

const DESCENT_SWEEPS: usize = 200;
const ELLIPSOID_ITERS: usize = 200_000;

/// Endpoint of an edge in a placement problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum End {
    Fixed(usize),
    Free(usize),
}

/// Fixed points, free points and the edges joining them.
pub(crate) struct Topology {
    pub fixed: Vec<[f64; 2]>,
    pub free: usize,
    pub edges: Vec<(End, End)>,
}

/// Result of [`minimax_place`].
#[derive(Clone, Debug)]
pub struct Placement {
    /// Positions of the Steiner nodes, in node order.
    pub positions: Vec<Point>,
    /// Longest edge at `positions`.
    pub bottleneck: f64,
    /// Certified lower bound on the optimal longest edge.
    pub lower_bound: f64,
}

pub(crate) struct FloatPlacement {
    pub x: Vec<[f64; 2]>,
    pub upper: f64,
    pub lower: f64,
}

impl Topology {
    fn pos(&self, e: End, x: &[[f64; 2]]) -> [f64; 2] {
        match e {
            End::Fixed(i) => self.fixed[i],
            End::Free(j) => x[j],
        }
    }

    /// Objective value and index of a longest edge.
    fn eval(&self, x: &[[f64; 2]], norm: PNorm) -> (f64, Option<usize>) {
        let mut best = (0.0, None);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let d = norm.dist_f64(self.pos(a, x), self.pos(b, x));
            if best.1.is_none() || d > best.0 {
                best = (d, Some(i));
            }
        }
        best
    }

    fn subgradient(&self, x: &[[f64; 2]], edge: usize, norm: PNorm) -> DVector<f64> {
        let mut g = DVector::zeros(2 * self.free);
        let (a, b) = self.edges[edge];
        let ga = norm.gradient(self.pos(a, x), self.pos(b, x));
        if let End::Free(j) = a {
            g[2 * j] += ga[0];
            g[2 * j + 1] += ga[1];
        }
        if let End::Free(j) = b {
            g[2 * j] -= ga[0];
            g[2 * j + 1] -= ga[1];
        }
        g
    }

    fn descent(&self, mut x: Vec<[f64; 2]>, norm: PNorm, tol: f64) -> (Vec<[f64; 2]>, f64) {
        let mut neighbours: Vec<Vec<End>> = vec![Vec::new(); self.free];
        for &(a, b) in &self.edges {
            if let End::Free(j) = a {
                neighbours[j].push(b);
            }
            if let End::Free(j) = b {
                neighbours[j].push(a);
            }
        }
        let mut value = self.eval(&x, norm).0;
        for _ in 0..DESCENT_SWEEPS {
            for j in 0..self.free {
                if neighbours[j].is_empty() {
                    continue;
                }
                let pts: Vec<[f64; 2]> = neighbours[j].iter().map(|&e| self.pos(e, &x)).collect();
                x[j] = minimax_center(&pts, norm, tol).0;
            }
            let next = self.eval(&x, norm).0;
            let improved = value - next;
            value = next.min(value);
            if improved <= tol {
                break;
            }
        }
        (x, value)
    }

    pub fn place(&self, norm: PNorm, tol: f64) -> FloatPlacement {
        let s = self.free;
        let fixed_only = self
            .edges
            .iter()
            .filter(|(a, b)| matches!((a, b), (End::Fixed(_), End::Fixed(_))))
            .map(|&(a, b)| norm.dist_f64(self.pos(a, &[]), self.pos(b, &[])))
            .fold(0.0, f64::max);
        let centroid = if self.fixed.is_empty() {
            [0.0, 0.0]
        } else {
            let n = self.fixed.len() as f64;
            let sx: f64 = self.fixed.iter().map(|p| p[0]).sum();
            let sy: f64 = self.fixed.iter().map(|p| p[1]).sum();
            [sx / n, sy / n]
        };
        if s == 0 || self.fixed.is_empty() {
            let x = vec![centroid; s];
            let upper = self.eval(&x, norm).0;
            return FloatPlacement {
                x,
                upper,
                lower: upper,
            };
        }

        let seeds = std::iter::once(centroid).chain(self.fixed.iter().copied());
        let (mut best_x, mut upper) = (Vec::new(), f64::INFINITY);
        for seed in seeds {
            let (x, v) = self.descent(vec![seed; s], norm, tol / 10.0);
            if v < upper {
                best_x = x;
                upper = v;
            }
        }
        let mut lower = fixed_only;
        if upper - lower <= tol {
            return FloatPlacement {
                x: best_x,
                upper,
                lower,
            };
        }

        // Central-cut ellipsoid method over the bounding box of the fixed
        // points, which contains an optimal placement (clamping free points
        // into the box never lengthens an edge).
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &self.fixed {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let d = 2 * s;
        let df = d as f64;
        let mut c = DVector::from_iterator(d, best_x.iter().flat_map(|p| [p[0], p[1]]));
        let mut r2 = 0.0;
        for p in &best_x {
            let mut far = 0.0f64;
            for cx in [lo[0], hi[0]] {
                for cy in [lo[1], hi[1]] {
                    far = far.max((p[0] - cx).powi(2) + (p[1] - cy).powi(2));
                }
            }
            r2 += far;
        }
        let r2 = r2 * (1.0 + 1e-9) + 1e-12;
        let mut p_mat = DMatrix::identity(d, d) * r2;
        let shrink = df * df / (df * df - 1.0);
        let to_points = |c: &DVector<f64>| -> Vec<[f64; 2]> {
            (0..s).map(|j| [c[2 * j], c[2 * j + 1]]).collect()
        };
        for _ in 0..ELLIPSOID_ITERS {
            let mut outside = None;
            for i in 0..d {
                let k = i % 2;
                if c[i] < lo[k] {
                    outside = Some((i, -1.0));
                } else if c[i] > hi[k] {
                    outside = Some((i, 1.0));
                }
                if outside.is_some() {
                    break;
                }
            }
            let g = match outside {
                Some((i, sign)) => {
                    let mut g = DVector::zeros(d);
                    g[i] = sign;
                    g
                }
                None => {
                    let x = to_points(&c);
                    let (v, edge) = self.eval(&x, norm);
                    if v < upper {
                        upper = v;
                        best_x = x.clone();
                    }
                    let g = self.subgradient(&x, edge.expect("edges exist"), norm);
                    if g.iter().all(|&t| t == 0.0) {
                        lower = lower.max(v);
                        break;
                    }
                    let width = (g.dot(&(&p_mat * &g))).max(0.0).sqrt();
                    lower = lower.max(v - width);
                    g
                }
            };
            if upper - lower <= tol {
                break;
            }
            let pg = &p_mat * &g;
            let gpg = g.dot(&pg);
            if gpg.is_nan() || gpg <= 0.0 {
                break;
            }
            let gt = pg / gpg.sqrt();
            c -= &gt / (df + 1.0);
            p_mat = (&p_mat - (&gt * gt.transpose()) * (2.0 / (df + 1.0))) * shrink;
            // Keep the shape matrix symmetric against rounding drift.
            p_mat = (&p_mat + p_mat.transpose()) * 0.5;
        }
        FloatPlacement {
            x: best_x,
            upper,
            lower: lower.min(upper),
        }
    }
}

/// Places the Steiner nodes of `topology` to minimise its longest edge.
///
/// Terminal positions are fixed and Steiner positions are ignored on input.
/// The objective is convex, so the returned `lower_bound` certifies
/// optimality up to `bottleneck − lower_bound`, which is at most `tol`
/// unless the iteration cap was hit.
pub fn minimax_place(topology: &Network, norm: PNorm, tol: f64) -> Result<Placement> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(crate::Error::InvalidArgument("tol must be positive".into()));
    }
    let mut slot = vec![End::Fixed(0); topology.len()];
    let (mut fixed, mut free) = (Vec::new(), 0);
    for (i, n) in topology.nodes().iter().enumerate() {
        slot[i] = match n.role {
            Role::Terminal => {
                fixed.push(n.pos.to_f64());
                End::Fixed(fixed.len() - 1)
            }
            Role::Steiner => {
                free += 1;
                End::Free(free - 1)
            }
        };
    }
    let topo = Topology {
        fixed,
        free,
        edges: topology.edges().map(|(a, b)| (slot[a], slot[b])).collect(),
    };
    let placed = topo.place(norm, tol);
    let positions = placed
        .x
        .iter()
        .map(|p| Point::from_f64(p[0], p[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Placement {
        positions,
        bottleneck: placed.upper,
        lower_bound: placed.lower,
    })
}

/// Moves the Steiner nodes of `net` to `placement`.
pub fn apply_placement(net: &mut Network, placement: &Placement) {
    let steiner: Vec<usize> = (0..net.len())
        .filter(|&i| net.node(i).role == Role::Steiner)
        .collect();
    for (i, p) in steiner.into_iter().zip(&placement.positions) {
        net.set_position(i, p.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(terms: &[(i64, i64)]) -> Network {
        let mut net = Network::new();
        let s = net.add_steiner("s", Point::origin()).unwrap();
        for (i, &(x, y)) in terms.iter().enumerate() {
            let t = net.add_terminal(format!("t{i}"), Point::from_ints(x, y)).unwrap();
            net.add_edge(s, t).unwrap();
        }
        net
    }

    #[test]
    fn right_triangle_star() {
        let net = star(&[(0, 0), (0, 2), (2, 0)]);
        let p = minimax_place(&net, PNorm::L2, 1e-9).unwrap();
        assert!((p.bottleneck - 2f64.sqrt()).abs() < 1e-8);
        let c = p.positions[0].to_f64();
        assert!((c[0] - 1.0).abs() < 1e-6 && (c[1] - 1.0).abs() < 1e-6);
        assert!(p.bottleneck - p.lower_bound <= 1e-9);
    }

    #[test]
    fn bead_on_segment() {
        let p = minimax_place(&star(&[(0, 0), (2, 0)]), PNorm::L1, 1e-9).unwrap();
        assert!((p.bottleneck - 1.0).abs() < 1e-9);
        let c = p.positions[0].to_f64();
        assert!((c[0] - 1.0).abs() < 1e-6 && c[1].abs() < 1e-6);
    }

    #[test]
    fn no_steiner_points() {
        let mut net = Network::new();
        net.add_terminal("a", Point::origin()).unwrap();
        net.add_terminal("b", Point::from_ints(3, 4)).unwrap();
        net.add_edge(0, 1).unwrap();
        let p = minimax_place(&net, PNorm::L2, 1e-9).unwrap();
        assert_eq!(p.bottleneck, 5.0);
        assert!(p.positions.is_empty());
    }

    #[test]
    fn two_steiner_chain_is_certified() {
        // t0 — s0 — s1 — t1 plus s0–t2, s1–t3.
        let mut net = Network::new();
        let s0 = net.add_steiner("s0", Point::origin()).unwrap();
        let s1 = net.add_steiner("s1", Point::origin()).unwrap();
        let pts = [(0, 0), (10, 0), (0, 4), (10, 4)];
        let t: Vec<usize> = pts
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| net.add_terminal(format!("t{i}"), Point::from_ints(x, y)).unwrap())
            .collect();
        for (a, b) in [(t[0], s0), (s0, s1), (s1, t[1]), (s0, t[2]), (s1, t[3])] {
            net.add_edge(a, b).unwrap();
        }
        for norm in [PNorm::L1, PNorm::L2, PNorm::Infinity] {
            let p = minimax_place(&net, norm, 1e-7).unwrap();
            assert!(p.bottleneck - p.lower_bound <= 1e-7, "{norm}: {p:?}");
        }
    }
}
