use std::cmp::Ordering;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::instance::{
    bottleneck_of, Connectivity, Instance, Method, Optimality, SolveReport,
};
use super::pairs::PairOrder;
use crate::error::{Error, Result};
use crate::geometry::{IntFrame, Length, Point};
use crate::graph::{blocks_adj, is_biconnected_adj, Network};

/// Candidate sets up to this size are scanned exhaustively, which makes the
/// result nonincreasing in `k`; larger sets are binary-searched.
const FULL_SCAN_LIMIT: usize = 256;
/// Extra randomized deletion orders tried when pruning.
const PRUNE_ORDERS: u64 = 16;

/// The `m` points subdividing `ab` into `m + 1` equal parts.
pub fn bead_edge(a: &Point, b: &Point, m: usize) -> Vec<Point> {
    (1..=m)
        .map(|i| a.lerp(b, &BigRational::new((i as i64).into(), ((m + 1) as i64).into())))
        .collect()
}

/// Smallest `m ≤ cap` with `d / (m + 1) ≤ b`.
fn beads_needed(d: &Length, b: &Length, cap: usize) -> Option<usize> {
    (0..=cap).find(|&m| d.divided(m as u32 + 1).le(b))
}

fn sorted_dedup(mut v: Vec<Length>) -> Vec<Length> {
    v.sort_by(|a, b| a.compare(b));
    v.dedup_by(|a, b| a.compare(b) == Ordering::Equal);
    v
}

fn add_beaded(net: &mut Network, a: usize, b: usize, m: usize) -> Result<()> {
    let (pa, pb) = (net.node(a).pos.clone(), net.node(b).pos.clone());
    let (ia, ib) = (net.node(a).id.clone(), net.node(b).id.clone());
    let mut prev = a;
    for (j, p) in bead_edge(&pa, &pb, m).into_iter().enumerate() {
        let s = net.add_steiner(format!("bead:{ia}:{ib}:{j}"), p)?;
        net.add_edge(prev, s)?;
        prev = s;
    }
    net.add_edge(prev, b)?;
    Ok(())
}

/// Beaded minimum spanning tree: an MST whose edges receive the `k`
/// degree-2 Steiner points so as to minimise the longest sub-edge.
pub fn beaded_mst_heuristic(inst: &Instance) -> Result<SolveReport> {
    let n = inst.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 terminals".into()));
    }
    let frame = IntFrame::new(&inst.points(), inst.norm);
    let order = PairOrder::new(&frame);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree: Vec<(usize, usize, Length)> = Vec::with_capacity(n - 1);
    for &(a, b) in &order.pairs {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if ra != rb {
            parent[ra] = rb;
            tree.push((a as usize, b as usize, frame.length(a as usize, b as usize)));
            if tree.len() == n - 1 {
                break;
            }
        }
    }
    let k = inst.k;
    let candidates = sorted_dedup(
        tree.iter()
            .flat_map(|(_, _, d)| (0..=k).map(move |j| d.divided(j as u32 + 1)))
            .collect(),
    );
    let cost = |b: &Length| -> Option<usize> {
        tree.iter()
            .map(|(_, _, d)| beads_needed(d, b, k))
            .try_fold(0usize, |acc, m| m.map(|m| acc + m))
            .filter(|&t| t <= k)
    };
    // The longest tree edge needs no beads, so the last candidate is feasible.
    let pos = candidates.partition_point(|b| cost(b).is_none());
    let b = &candidates[pos];
    let mut net = inst.terminal_network();
    for (u, v, d) in &tree {
        add_beaded(&mut net, *u, *v, beads_needed(d, b, k).expect("feasible"))?;
    }
    let bottleneck = bottleneck_of(&net, inst.norm)?;
    Ok(SolveReport {
        network: net,
        bottleneck,
        method: Method::BeadedMst,
        optimality: Optimality::Heuristic,
        connectivity: Connectivity::Connected,
        lower_bound: None,
    })
}

#[derive(Clone, Copy)]
struct Beaded {
    pair: (u32, u32),
    beads: usize,
    group: usize,
}

/// A beading plan for a fixed candidate bottleneck `b`.
struct Plan {
    /// Groups of `order` whose pairs join without beads.
    free_groups: usize,
    beaded: Vec<Beaded>,
    total: usize,
    /// Longest edge of the resulting network.
    realized: Length,
}

struct Planner<'a> {
    order: &'a PairOrder,
    n: usize,
    k: usize,
}

impl Planner<'_> {
    fn adjacency(&self, free_groups: usize, extra: &[(u32, u32)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        let free = if free_groups == 0 {
            &[][..]
        } else {
            self.order.prefix(free_groups - 1)
        };
        for &(a, b) in free.iter().chain(extra) {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        adj
    }

    /// Greedy: free edges, then beaded edges by ascending cost until
    /// 2-connected, then prune. Edges costing more than `k` are never used,
    /// which only matters for plans that are infeasible anyway.
    ///
    /// Returns `None` early when even the degree deficit of the free graph
    /// cannot be covered within `k` beads.
    fn plan(&self, b: &Length) -> Option<Plan> {
        let free_groups = self.order.groups_within(b);
        let free_adj = self.adjacency(free_groups, &[]);
        let deficit: usize = free_adj.iter().map(|nb| 2usize.saturating_sub(nb.len())).sum();
        if deficit > 0 {
            let cheapest = (free_groups..self.order.groups())
                .next()
                .and_then(|g| beads_needed(&self.order.lengths[g], b, self.k))?;
            if deficit.div_ceil(2) * cheapest > self.k {
                return None;
            }
        }
        let mut block_of: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (id, block) in blocks_adj(&free_adj).into_iter().enumerate() {
            for v in block {
                block_of[v].push(id);
            }
        }
        let share_block = |a: usize, c: usize| block_of[a].iter().any(|x| block_of[c].contains(x));
        let mut beaded: Vec<Beaded> = Vec::new();
        for g in free_groups..self.order.groups() {
            let Some(m) = beads_needed(&self.order.lengths[g], b, self.k) else {
                break;
            };
            for &(x, y) in self.order.group(g) {
                if !share_block(x as usize, y as usize) {
                    beaded.push(Beaded {
                        pair: (x, y),
                        beads: m,
                        group: g,
                    });
                }
            }
        }
        let pairs: Vec<(u32, u32)> = beaded.iter().map(|e| e.pair).collect();
        let ok = |edges: &[(u32, u32)]| is_biconnected_adj(&self.adjacency(free_groups, edges));
        if !ok(&pairs) {
            return None;
        }
        let (mut lo, mut hi) = (0, pairs.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if ok(&pairs[..mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let chosen: Vec<Beaded> = beaded[..lo].to_vec();
        let mut best: Option<Vec<Beaded>> = None;
        let total = |v: &[Beaded]| v.iter().map(|e| e.beads).sum::<usize>();
        for seed in 0..=PRUNE_ORDERS {
            let mut removal: Vec<usize> = (0..chosen.len()).collect();
            if seed > 0 {
                removal.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            } else {
                removal.reverse();
            }
            // Most expensive first; the shuffle only permutes equal costs.
            removal.sort_by(|&x, &y| chosen[y].beads.cmp(&chosen[x].beads));
            let mut keep = vec![true; chosen.len()];
            for &e in &removal {
                keep[e] = false;
                let rest: Vec<(u32, u32)> = (0..chosen.len())
                    .filter(|&i| keep[i])
                    .map(|i| chosen[i].pair)
                    .collect();
                if !ok(&rest) {
                    keep[e] = true;
                }
            }
            let kept: Vec<_> = (0..chosen.len())
                .filter(|&i| keep[i])
                .map(|i| chosen[i])
                .collect();
            if best.as_ref().is_none_or(|b| total(&kept) < total(b)) {
                best = Some(kept);
            }
        }
        let beaded = best.expect("at least one order");
        let mut realized = if free_groups == 0 {
            None
        } else {
            Some(self.order.lengths[free_groups - 1].clone())
        };
        for e in &beaded {
            let sub = self.order.lengths[e.group].divided(e.beads as u32 + 1);
            realized = Some(match realized {
                Some(r) => r.max(sub),
                None => sub,
            });
        }
        Some(Plan {
            free_groups,
            total: total(&beaded),
            beaded,
            realized: realized.expect("a 2-connected network has edges"),
        })
    }
}

/// Beaded 2-connected heuristic: searches candidate bottlenecks
/// `d(u, v)/(j + 1)`, building for each a 2-connected terminal graph whose
/// long edges are subdivided by degree-2 Steiner points.
pub fn beaded_2conn_heuristic(inst: &Instance) -> Result<SolveReport> {
    let n = inst.len();
    if n < 3 {
        return Err(Error::Infeasible(format!(
            "2-connectivity needs at least 3 terminals, got {n}"
        )));
    }
    let frame = IntFrame::new(&inst.points(), inst.norm);
    let order = PairOrder::new(&frame);
    let g0 = order
        .smallest_prefix(n, &[], is_biconnected_adj)
        .expect("complete graph is 2-connected");
    let lambda = order.lengths[g0 - 1].clone();
    let k = inst.k;
    let useful = order
        .lengths
        .partition_point(|d| d.divided(k as u32 + 1).le(&lambda));
    let candidates = sorted_dedup(
        order.lengths[..useful]
            .iter()
            .flat_map(|d| (0..=k).map(move |j| d.divided(j as u32 + 1)))
            .filter(|c| c.le(&lambda))
            .collect(),
    );
    let planner = Planner {
        order: &order,
        n,
        k,
    };
    let feasible = |b: &Length| planner.plan(b).filter(|p| p.total <= k);
    let plan = if candidates.len() <= FULL_SCAN_LIMIT {
        let mut best: Option<Plan> = None;
        for b in &candidates {
            if let Some(p) = feasible(b) {
                if best.as_ref().is_none_or(|q| p.realized.lt(&q.realized)) {
                    best = Some(p);
                }
            }
        }
        best
    } else {
        let pos = candidates.partition_point(|b| feasible(b).is_none());
        candidates.get(pos).and_then(feasible)
    }
    .expect("λ itself is feasible without beads");

    let mut net = inst.terminal_network();
    if plan.free_groups > 0 {
        for &(a, b) in order.prefix(plan.free_groups - 1) {
            net.add_edge(a as usize, b as usize)?;
        }
    }
    for e in &plan.beaded {
        add_beaded(&mut net, e.pair.0 as usize, e.pair.1 as usize, e.beads)?;
    }
    let bottleneck = bottleneck_of(&net, inst.norm)?;
    Ok(SolveReport {
        network: net,
        bottleneck,
        method: Method::Beaded2Conn,
        optimality: Optimality::Heuristic,
        connectivity: Connectivity::Biconnected,
        lower_bound: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rational, PNorm};
    use crate::solvers::instance::verify_solution;

    fn inst(v: &[(i64, i64)], k: usize) -> Instance {
        let pts: Vec<Point> = v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
        Instance::from_points(&pts, k, PNorm::L2)
    }

    #[test]
    fn bead_positions() {
        let o = Point::origin();
        assert_eq!(bead_edge(&o, &Point::from_ints(2, 0), 1), vec![Point::from_ints(1, 0)]);
        assert_eq!(
            bead_edge(&o, &Point::from_ints(3, 0), 2),
            vec![Point::from_ints(1, 0), Point::from_ints(2, 0)]
        );
        assert_eq!(bead_edge(&o, &o, 3), vec![o.clone(), o.clone(), o]);
        let p = bead_edge(&Point::origin(), &Point::from_ints(1, 1), 2);
        assert_eq!(p[0], Point::new(rational(1, 3), rational(1, 3)));
    }

    #[test]
    fn mst_beads_two_terminals() {
        let r = beaded_mst_heuristic(&inst(&[(0, 0), (4, 0)], 1)).unwrap();
        assert_eq!(r.bottleneck.value(), 2.0);
        let r = beaded_mst_heuristic(&inst(&[(0, 0), (4, 0)], 3)).unwrap();
        assert_eq!(r.bottleneck.value(), 1.0);
        assert_eq!(r.network.steiner_count(), 3);
    }

    #[test]
    fn square_without_and_with_beads() {
        let sq = [(0, 0), (1, 0), (1, 1), (0, 1)];
        let r = beaded_2conn_heuristic(&inst(&sq, 0)).unwrap();
        assert_eq!(r.bottleneck.value(), 1.0);
        assert_eq!(r.network.edge_count(), 4);
        let big = [(0, 0), (2, 0), (2, 2), (0, 2)];
        let i = inst(&big, 4);
        let r = beaded_2conn_heuristic(&i).unwrap();
        assert_eq!(r.bottleneck.value(), 1.0);
        assert!(verify_solution(&r.network, &i, true).ok);
    }

    #[test]
    fn too_few_terminals() {
        assert!(beaded_2conn_heuristic(&inst(&[(0, 0), (1, 0)], 2)).is_err());
    }
}
