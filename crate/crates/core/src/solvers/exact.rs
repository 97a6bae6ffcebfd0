use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use super::beading::{beaded_2conn_heuristic, beaded_mst_heuristic};
use super::instance::{
    bottleneck_of, Connectivity, Instance, Method, Optimality, SolveReport,
};
use super::minimax::{End, Topology};
use super::pairs::PairOrder;
use crate::error::{Error, Result};
use crate::geometry::{IntFrame, Point};

pub const EXACT_MAX_TERMINALS: usize = 6;
pub const EXACT_MAX_STEINER: usize = 3;

/// Steiner-incident edges: terminal neighbour masks plus Steiner–Steiner
/// edges (bit `i` of `links` is the `i`-th pair of [`steiner_pairs`]).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Config {
    masks: Vec<u8>,
    links: u8,
}

fn steiner_pairs(s: usize) -> Vec<(usize, usize)> {
    (0..s)
        .flat_map(|i| (i + 1..s).map(move |j| (i, j)))
        .collect()
}

fn permutations(s: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, s: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for v in 0..s {
            if !cur.contains(&v) {
                cur.push(v);
                rec(cur, s, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), s, &mut out);
    out
}

impl Config {
    fn permuted(&self, perm: &[usize], pairs: &[(usize, usize)]) -> Config {
        let masks = perm.iter().map(|&p| self.masks[p]).collect();
        let mut links = 0u8;
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            let src = pairs.iter().position(|&q| q == (a, b)).expect("pair exists");
            if self.links >> src & 1 == 1 {
                links |= 1 << bit;
            }
        }
        Config { masks, links }
    }

    fn degrees(&self, pairs: &[(usize, usize)]) -> Vec<usize> {
        let mut deg: Vec<usize> = self.masks.iter().map(|m| m.count_ones() as usize).collect();
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if self.links >> bit & 1 == 1 {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
        deg
    }

    /// Edges on vertices `0..t` (terminals) and `t..t+s` (Steiner points).
    fn edges(&self, t: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (j, &m) in self.masks.iter().enumerate() {
            for i in 0..t {
                if m >> i & 1 == 1 {
                    e.push((i, t + j));
                }
            }
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if self.links >> bit & 1 == 1 {
                e.push((t + i, t + j));
            }
        }
        e
    }
}

fn configs(t: usize, s: usize, degree2_only: bool) -> Vec<Config> {
    let pairs = steiner_pairs(s);
    let perms = permutations(s);
    let mut out = Vec::new();
    let mut masks = vec![0u8; s];
    let total_masks = 1usize << (t * s);
    for code in 0..total_masks {
        for (j, m) in masks.iter_mut().enumerate() {
            *m = ((code >> (t * j)) & ((1 << t) - 1)) as u8;
        }
        for links in 0..(1u16 << pairs.len()) {
            let c = Config {
                masks: masks.clone(),
                links: links as u8,
            };
            let ok_degree = c.degrees(&pairs).iter().all(|&d| {
                if degree2_only {
                    d == 2
                } else {
                    d >= 2
                }
            });
            if ok_degree && perms.iter().all(|p| c <= c.permuted(p, &pairs)) {
                out.push(c);
            }
        }
    }
    out
}

struct Candidate {
    value: f64,
    lower: f64,
    steiner: usize,
    edges: Vec<(usize, usize)>,
    positions: Vec<[f64; 2]>,
}

enum Outcome {
    Skip,
    Pruned(f64),
    Done(Candidate),
}

fn atomic_min(cell: &AtomicU64, v: f64) {
    let _ = cell.fetch_update(AtomicOrdering::Relaxed, AtomicOrdering::Relaxed, |cur| {
        (v < f64::from_bits(cur)).then_some(v.to_bits())
    });
}

/// Exact solver for tiny instances.
///
/// Enumerates, up to relabelling of Steiner points, every set of
/// Steiner-incident edges on `s ≤ k` Steiner points (degree ≥ 2, or exactly
/// 2 for `degree2_only`). For each set, the cheapest completion by
/// terminal–terminal edges is a threshold, and the Steiner positions are
/// placed by [`minimax_place`](super::minimax_place). Sets with a removable
/// edge are dominated and skipped. Among values within `tol` of the best, the
/// fewest Steiner points, then fewest edges, then the smallest edge list win.
pub fn exact_small(inst: &Instance, connectivity: Connectivity, tol: f64) -> Result<SolveReport> {
    let t = inst.len();
    if t > EXACT_MAX_TERMINALS || inst.k > EXACT_MAX_STEINER {
        return Err(Error::TooLarge(format!(
            "{t} terminals, k = {} (limits {EXACT_MAX_TERMINALS} terminals, k ≤ {EXACT_MAX_STEINER})",
            inst.k
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let min_t = match connectivity {
        Connectivity::Connected => 2,
        Connectivity::Biconnected => 3,
    };
    if t < min_t {
        return Err(Error::Infeasible(format!("{t} terminals are too few")));
    }
    let heuristic = match connectivity {
        Connectivity::Connected => beaded_mst_heuristic(inst)?,
        Connectivity::Biconnected => beaded_2conn_heuristic(inst)?,
    };
    let best_bound = AtomicU64::new(heuristic.bottleneck.value().to_bits());

    let points = inst.points();
    let fixed: Vec<[f64; 2]> = points.iter().map(Point::to_f64).collect();
    let order = PairOrder::new(&IntFrame::new(&points, inst.norm));
    let norm = inst.norm;
    let pred = move |adj: &[Vec<usize>]| connectivity.holds(adj);

    let evaluate = |s: usize, c: &Config| -> Outcome {
        let pairs = steiner_pairs(s);
        let n = t + s;
        let base = c.edges(t, &pairs);
        let Some(g) = order.smallest_prefix(n, &base, pred) else {
            return Outcome::Skip;
        };
        let tt = if g == 0 { &[][..] } else { order.prefix(g - 1) };
        let lambda = if g == 0 { 0.0 } else { order.lengths[g - 1].value() };
        let deg = c.degrees(&pairs);
        for (idx, &(a, b)) in base.iter().enumerate() {
            let lowers_below = |v: usize| v >= t && deg[v - t] <= 2;
            if lowers_below(a) || lowers_below(b) {
                continue;
            }
            let mut adj = vec![Vec::new(); n];
            for (&(x, y), _) in base.iter().zip(0..).filter(|&(_, i)| i != idx) {
                adj[x].push(y);
                adj[y].push(x);
            }
            for &(x, y) in tt {
                adj[x as usize].push(y as usize);
                adj[y as usize].push(x as usize);
            }
            if pred(&adj) {
                return Outcome::Skip;
            }
        }
        let mut lb = lambda;
        for &m in &c.masks {
            let nb: Vec<usize> = (0..t).filter(|&i| m >> i & 1 == 1).collect();
            for (x, &i) in nb.iter().enumerate() {
                for &j in &nb[x + 1..] {
                    lb = lb.max(norm.dist_f64(fixed[i], fixed[j]) / 2.0);
                }
            }
        }
        if lb > f64::from_bits(best_bound.load(AtomicOrdering::Relaxed)) + tol {
            return Outcome::Pruned(lb);
        }
        let slot = |v: usize| if v < t { End::Fixed(v) } else { End::Free(v - t) };
        let topo = Topology {
            fixed: fixed.clone(),
            free: s,
            edges: base.iter().map(|&(a, b)| (slot(a), slot(b))).collect(),
        };
        let placed = topo.place(norm, tol);
        let value = placed.upper.max(lambda);
        atomic_min(&best_bound, value);
        let mut edges = base;
        edges.extend(tt.iter().map(|&(a, b)| (a as usize, b as usize)));
        edges.sort_unstable();
        Outcome::Done(Candidate {
            value,
            lower: placed.lower.max(lambda).max(lb),
            steiner: s,
            edges,
            positions: placed.x,
        })
    };

    let mut work: Vec<(usize, Config)> = Vec::new();
    for s in 0..=inst.k {
        work.extend(configs(t, s, inst.degree2_only).into_iter().map(|c| (s, c)));
    }
    let outcomes: Vec<Outcome> = work.par_iter().map(|(s, c)| evaluate(*s, c)).collect();

    let mut lower = f64::INFINITY;
    let mut candidates = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Skip => {}
            Outcome::Pruned(lb) => lower = lower.min(lb),
            Outcome::Done(c) => {
                lower = lower.min(c.lower);
                candidates.push(c);
            }
        }
    }
    let best_value = candidates
        .iter()
        .map(|c| c.value)
        .fold(f64::INFINITY, f64::min);
    let chosen = candidates
        .into_iter()
        .filter(|c| c.value <= best_value + tol)
        .min_by(|a, b| {
            a.steiner
                .cmp(&b.steiner)
                .then(a.edges.len().cmp(&b.edges.len()))
                .then_with(|| a.edges.cmp(&b.edges))
        })
        .ok_or_else(|| Error::Infeasible("no topology satisfies the connectivity".into()))?;

    let mut net = inst.terminal_network();
    for (j, p) in chosen.positions.iter().enumerate() {
        net.add_steiner(format!("s{j}"), Point::from_f64(p[0], p[1])?)?;
    }
    for &(a, b) in &chosen.edges {
        net.add_edge(a, b)?;
    }
    let bottleneck = bottleneck_of(&net, norm)?;
    Ok(SolveReport {
        network: net,
        bottleneck,
        method: Method::Exact,
        optimality: Optimality::OptimalWithinTol,
        connectivity,
        lower_bound: Some(lower.min(best_value)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{lemma2_bound, PNorm};
    use crate::solvers::instance::verify_solution;

    fn inst(v: &[(i64, i64)], k: usize, norm: PNorm) -> Instance {
        let pts: Vec<Point> = v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
        Instance::from_points(&pts, k, norm)
    }

    #[test]
    fn canonical_configs_are_distinct_orbits() {
        // One Steiner point on 3 terminals: the 4 masks of size ≥ 2.
        assert_eq!(configs(3, 1, false).len(), 4);
        assert_eq!(configs(3, 1, true).len(), 3);
        let two = configs(3, 2, false);
        for c in &two {
            let p = c.permuted(&[1, 0], &steiner_pairs(2));
            assert!(*c <= p);
        }
    }

    #[test]
    fn unit_square_without_steiner_points() {
        let r = exact_small(&inst(&[(0, 0), (1, 0), (1, 1), (0, 1)], 0, PNorm::L2), Connectivity::Biconnected, 1e-7)
            .unwrap();
        assert_eq!(r.bottleneck.value(), 1.0);
        assert_eq!(r.network.edge_count(), 4);
    }

    #[test]
    fn guards() {
        let seven: Vec<(i64, i64)> = (0..7).map(|i| (i, i * i)).collect();
        let err = exact_small(&inst(&seven, 0, PNorm::L2), Connectivity::Biconnected, 1e-6).unwrap_err();
        assert!(err.to_string().contains("instance too large for exact solver"));
        assert!(exact_small(&inst(&[(0, 0), (1, 0), (2, 2)], 4, PNorm::L2), Connectivity::Biconnected, 1e-6).is_err());
    }

    #[test]
    fn right_triangle_in_tree_and_2conn_modes() {
        for norm in [PNorm::L1, PNorm::L2, PNorm::Infinity] {
            let i = inst(&[(0, 0), (0, 2), (2, 0)], 1, norm);
            let tree = exact_small(&i, Connectivity::Connected, 1e-7).unwrap();
            assert!((tree.bottleneck.value() - lemma2_bound(norm)).abs() < 1e-6, "{norm}");
            let two = exact_small(&i, Connectivity::Biconnected, 1e-7).unwrap();
            assert!(two.bottleneck.value() >= lemma2_bound(norm) - 1e-6, "{norm}");
            assert!(verify_solution(&two.network, &i, true).ok);
        }
    }
}
