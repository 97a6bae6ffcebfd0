use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use super::gadget::{gap_bound, reduce, GadgetInstance, GadgetRole};
use super::source::OrthoDrawing;
use crate::error::{Error, Result};
use crate::geometry::{int, Length, PNorm};
use crate::graph::{canonical_cycle, cycle_edges, is_biconnected_adj, is_hamiltonian_cycle, Graph, Network, Role};
use crate::solvers::{beaded_2conn_heuristic, bottleneck_of, verify_solution};

/// Cap on enumerated Hamiltonian cycles in [`roundtrip_check`].
pub const HAMILTONIAN_LIMIT: usize = 10_000;

/// The gap bound as a length: exact key 2 when comparisons are exact.
fn bound_length(norm: PNorm) -> Length {
    if norm.is_exact() {
        Length::from_key(norm, int(2))
    } else {
        Length::approx(gap_bound(norm))
    }
}

/// Adds every terminal–terminal edge of length at most 1.
fn short_edges(net: &mut Network, norm: PNorm) {
    let one = Length::from_rational(norm, &int(1));
    let coords: Vec<[f64; 2]> = net.nodes().iter().map(|n| n.pos.to_f64()).collect();
    let mut order: Vec<usize> = (0..coords.len()).collect();
    order.sort_by(|&a, &b| coords[a][0].total_cmp(&coords[b][0]).then(a.cmp(&b)));
    // Any norm has ‖v‖ ≥ max(|vx|, |vy|), so a 1-box prefilter is safe; the
    // slack absorbs float rounding of the coordinates.
    let reach = 1.0 + 1e-9;
    let edges: Vec<(usize, usize)> = (0..order.len())
        .into_par_iter()
        .flat_map_iter(|ai| {
            let a = order[ai];
            let mut out = Vec::new();
            for &b in &order[ai + 1..] {
                if coords[b][0] - coords[a][0] > reach {
                    break;
                }
                if (coords[b][1] - coords[a][1]).abs() > reach {
                    continue;
                }
                let (na, nb) = (net.node(a), net.node(b));
                if na.role == Role::Terminal
                    && nb.role == Role::Terminal
                    && Length::between(norm, &na.pos, &nb.pos).le(&one)
                {
                    out.push((a.min(b), a.max(b)));
                }
            }
            out
        })
        .collect();
    for (a, b) in edges {
        net.add_edge(a, b).expect("valid indices");
    }
}

/// The witness network of a Hamiltonian cycle `cycle` of the source graph
/// (vertex indices, in cycle order).
///
/// Each W-terminal gets two Steiner points, at the midpoints towards the
/// tips of its two cycle neighbours; all terminals at distance at most 1
/// are joined. Every edge has length at most 1 in every norm.
pub fn witness_network(inst: &GadgetInstance, cycle: &[usize]) -> Result<Network> {
    let g = &inst.source.graph;
    if !is_hamiltonian_cycle(g, cycle) {
        return Err(Error::InvalidCycle(format!(
            "{:?} is not a Hamiltonian cycle of the source graph",
            cycle.iter().map(|&v| g.label(v)).collect::<Vec<_>>()
        )));
    }
    let mut net = inst.instance().terminal_network();
    short_edges(&mut net, inst.norm);
    let m = cycle.len();
    for (i, &w) in cycle.iter().enumerate() {
        if inst.source.is_u(w) {
            continue;
        }
        let wl = g.label(w);
        let wi = net.index_of(&format!("w:{wl}")).expect("W-terminal");
        for u in [cycle[(i + m - 1) % m], cycle[(i + 1) % m]] {
            let ul = g.label(u);
            let ti = inst.tip_index(ul, wl).expect("tip of a source edge");
            let mid = inst.terminals[ti].pos.midpoint(&net.node(wi).pos);
            let s = net.add_steiner(format!("s:{wl}:{ul}"), mid)?;
            net.add_edge(s, wi)?;
            net.add_edge(s, ti)?;
        }
    }
    Ok(net)
}

/// Outcome of [`extract_cycle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extraction {
    /// A Hamiltonian cycle of the source graph in canonical form.
    Cycle(Vec<usize>),
    /// The violated condition.
    Failure(String),
}

fn check_terminals(inst: &GadgetInstance, net: &Network) -> Result<()> {
    for t in &inst.terminals {
        match net.index_of(&t.id).map(|i| net.node(i)) {
            Some(n) if n.role == Role::Terminal && n.pos == t.pos => {}
            Some(_) => return Err(Error::TerminalMismatch(format!("{:?} differs", t.id))),
            None => return Err(Error::TerminalMismatch(format!("{:?} missing", t.id))),
        }
    }
    let count = net.terminal_indices().count();
    if count != inst.terminals.len() {
        return Err(Error::TerminalMismatch(format!(
            "network has {count} terminals, instance has {}",
            inst.terminals.len()
        )));
    }
    Ok(())
}

/// Orders the edge set `e` into a Hamiltonian cycle of `g`, if it is one.
fn cycle_from_edges(g: &Graph, e: &BTreeSet<(usize, usize)>) -> std::result::Result<Vec<usize>, String> {
    let n = g.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in e {
        adj[a].push(b);
        adj[b].push(a);
    }
    if let Some(v) = (0..n).find(|&v| adj[v].len() != 2) {
        return Err(format!("vertex {} has degree {} in E′", g.label(v), adj[v].len()));
    }
    let mut cycle = vec![0];
    let (mut prev, mut cur) = (0, adj[0][0]);
    while cur != 0 {
        cycle.push(cur);
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
    }
    if cycle.len() != n {
        return Err(format!("E′ splits into several cycles; the one through {} has {} vertices", g.label(0), cycle.len()));
    }
    Ok(canonical_cycle(&cycle))
}

/// Recovers a Hamiltonian cycle of the source graph from a network on the
/// gadget terminals.
///
/// Requires the budget, a bottleneck below the gap bound and
/// 2-connectivity. Terminals of each `P(u)` are contracted to `u`, and
/// `u`–`w` enters `E′` whenever a connected group of Steiner points touches
/// both a terminal of `P(u)` and the W-terminal of `w`.
pub fn extract_cycle(inst: &GadgetInstance, net: &Network) -> Result<Extraction> {
    check_terminals(inst, net)?;
    let norm = inst.norm;
    let s = net.steiner_count();
    if s > inst.k {
        return Ok(Extraction::Failure(format!("budget: {s} Steiner points exceed k = {}", inst.k)));
    }
    let Ok(b) = bottleneck_of(net, norm) else {
        return Ok(Extraction::Failure("connectivity: network has no edges".into()));
    };
    let bound = bound_length(norm);
    if b.ge(&bound) {
        return Ok(Extraction::Failure(format!(
            "bottleneck ≥ 2^(1/p): {:.9} ≥ {:.9}",
            b.value(),
            bound.value()
        )));
    }
    let adj = net.adjacency();
    if !is_biconnected_adj(&adj) {
        return Ok(Extraction::Failure("connectivity: not 2-connected".into()));
    }
    let g = &inst.source.graph;
    // Contracted source vertex of each terminal node.
    let mut vertex = vec![None; net.len()];
    for t in &inst.terminals {
        let label = match &t.role {
            GadgetRole::WTerminal { w } => w.as_str(),
            r => r.owner().expect("clustered role"),
        };
        vertex[net.index_of(&t.id).expect("checked")] = g.index_of(label);
    }
    // Steiner components.
    let mut comp = vec![usize::MAX; net.len()];
    let mut touched: Vec<BTreeSet<usize>> = Vec::new();
    for start in 0..net.len() {
        if net.node(start).role != Role::Steiner || comp[start] != usize::MAX {
            continue;
        }
        let c = touched.len();
        touched.push(BTreeSet::new());
        comp[start] = c;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if net.node(y).role == Role::Steiner {
                    if comp[y] == usize::MAX {
                        comp[y] = c;
                        stack.push(y);
                    }
                } else if let Some(v) = vertex[y] {
                    touched[c].insert(v);
                }
            }
        }
    }
    let mut e_prime = BTreeSet::new();
    for set in &touched {
        for &a in set {
            for &b in set.range(a + 1..) {
                if inst.source.is_u(a) != inst.source.is_u(b) && g.has_edge(a, b) {
                    e_prime.insert((a, b));
                }
            }
        }
    }
    Ok(match cycle_from_edges(g, &e_prime) {
        Ok(c) => Extraction::Cycle(c),
        Err(reason) => Extraction::Failure(format!("E′ is not a Hamiltonian cycle: {reason}")),
    })
}

/// Result of [`roundtrip_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripReport {
    pub cycles: usize,
    pub passed: usize,
    /// Whether enumeration stopped at [`HAMILTONIAN_LIMIT`].
    pub truncated: bool,
    pub failures: Vec<String>,
    /// Without a Hamiltonian cycle: the best bottleneck `beaded_2conn`
    /// found with `k = 2n`, and whether it is at least the gap bound. This
    /// is heuristic evidence only.
    pub heuristic_evidence: Option<(f64, bool)>,
}

impl RoundtripReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.heuristic_evidence.is_none_or(|(_, holds)| holds)
    }
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cycles, {} pass", self.cycles, self.passed)?;
        if self.truncated {
            write!(f, " (enumeration capped at {HAMILTONIAN_LIMIT})")?;
        }
        if let Some((b, holds)) = self.heuristic_evidence {
            write!(
                f,
                "; heuristic evidence only: beaded_2conn bottleneck {b:.9} {} the gap bound",
                if holds { "meets" } else { "is below" }
            )?;
        }
        for r in &self.failures {
            write!(f, "\n  {r}")?;
        }
        Ok(())
    }
}

/// Checks one cycle: witness bottleneck ≤ 1, 2-connected, `2n` Steiner
/// points, a valid solution, and extraction returns the same edge set.
fn check_cycle(inst: &GadgetInstance, cycle: &[usize]) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let net = witness_network(inst, cycle)?;
    let one = Length::from_rational(inst.norm, &int(1));
    let b = bottleneck_of(&net, inst.norm)?;
    if !b.le(&one) {
        bad.push(format!("witness bottleneck {b} > 1"));
    }
    if !is_biconnected_adj(&net.adjacency()) {
        bad.push("witness is not 2-connected".into());
    }
    if net.steiner_count() != 2 * inst.n() {
        bad.push(format!("witness has {} Steiner points", net.steiner_count()));
    }
    let verdict = verify_solution(&net, &inst.instance(), true);
    bad.extend(verdict.reasons);
    match extract_cycle(inst, &net)? {
        Extraction::Cycle(c) if cycle_edges(&c) == cycle_edges(cycle) => {}
        Extraction::Cycle(_) => bad.push("extracted a different cycle".into()),
        Extraction::Failure(r) => bad.push(format!("extraction failed: {r}")),
    }
    Ok(bad)
}

/// Enumerates Hamiltonian cycles of the source graph and roundtrips each
/// through the witness and the extraction. Without a cycle, runs
/// `beaded_2conn` with `k = 2n` and records whether it stays at or above
/// the gap bound (one-sided heuristic evidence).
pub fn roundtrip_check(graph: &Graph, drawing: &OrthoDrawing, norm: PNorm) -> Result<RoundtripReport> {
    let inst = reduce(graph, drawing, norm)?;
    let cycles = crate::graph::hamiltonian_cycles(graph, HAMILTONIAN_LIMIT);
    let mut failures = Vec::new();
    let mut passed = 0;
    for c in &cycles {
        let bad = check_cycle(&inst, c)?;
        if bad.is_empty() {
            passed += 1;
        } else {
            let labels: Vec<&str> = c.iter().map(|&v| graph.label(v)).collect();
            failures.push(format!("{}: {}", labels.join("-"), bad.join("; ")));
        }
    }
    let heuristic_evidence = if cycles.is_empty() {
        let report = beaded_2conn_heuristic(&inst.instance())?;
        let holds = report.bottleneck.ge(&bound_length(norm));
        Some((report.bottleneck.value(), holds))
    } else {
        None
    };
    Ok(RoundtripReport {
        cycles: cycles.len(),
        passed,
        truncated: cycles.len() >= HAMILTONIAN_LIMIT,
        failures,
        heuristic_evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::graph::hamiltonian_cycles;
    use crate::reduction::fixtures::q3_fixture;

    fn q3(norm: PNorm) -> GadgetInstance {
        let (g, d) = q3_fixture();
        reduce(&g, &d, norm).unwrap()
    }

    #[test]
    fn q3_roundtrip_all_cycles() {
        let (g, d) = q3_fixture();
        let r = roundtrip_check(&g, &d, PNorm::L2).unwrap();
        assert_eq!(r.to_string(), "6 cycles, 6 pass");
        assert!(r.ok());
    }

    #[test]
    fn witness_bottleneck_is_one_for_every_norm() {
        for norm in [PNorm::L1, PNorm::L2, PNorm::Infinity] {
            let inst = q3(norm);
            let c = hamiltonian_cycles(&inst.source.graph, 1).remove(0);
            let net = witness_network(&inst, &c).unwrap();
            let b = bottleneck_of(&net, norm).unwrap();
            assert_eq!(b.key(), Some(&int(1)), "{norm}");
            assert_eq!(net.steiner_count(), 8);
        }
    }

    #[test]
    fn clusters_are_biconnected_and_contract_to_a_cycle() {
        let inst = q3(PNorm::L2);
        let c = hamiltonian_cycles(&inst.source.graph, 1).remove(0);
        let net = witness_network(&inst, &c).unwrap();
        let clusters = inst.clusters();
        for u in 0..inst.n() {
            let members: Vec<usize> = (0..inst.terminals.len()).filter(|&i| clusters[i] == Some(u)).collect();
            let pos = |x: usize| members.binary_search(&x).ok();
            let adj: Vec<Vec<usize>> = members
                .iter()
                .map(|&a| net.adjacency()[a].iter().filter_map(|&b| pos(b)).collect())
                .collect();
            assert!(is_biconnected_adj(&adj), "cluster {u}");
        }
        // Contract P(u) with its Steiner points; W-terminals stay.
        let g = &inst.source.graph;
        let mut label = vec![usize::MAX; net.len()];
        for (i, t) in inst.terminals.iter().enumerate() {
            label[i] = match &t.role {
                GadgetRole::WTerminal { w } => g.index_of(w).unwrap(),
                r => g.index_of(r.owner().unwrap()).unwrap(),
            };
        }
        for (i, n) in net.nodes().iter().enumerate().skip(inst.terminals.len()) {
            let u = n.id.rsplit(':').next().unwrap();
            label[i] = g.index_of(u).unwrap();
        }
        let contracted: BTreeSet<(usize, usize)> = net
            .edges()
            .map(|(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
            .filter(|(a, b)| a != b)
            .collect();
        assert_eq!(contracted, cycle_edges(&c));
    }

    #[test]
    fn invalid_cycle_is_rejected() {
        let inst = q3(PNorm::L2);
        let mut c = hamiltonian_cycles(&inst.source.graph, 1).remove(0);
        c.pop();
        assert!(matches!(witness_network(&inst, &c), Err(Error::InvalidCycle(_))));
    }

    #[test]
    fn reduced_budget_fails_verification() {
        let mut inst = q3(PNorm::L2);
        let c = hamiltonian_cycles(&inst.source.graph, 1).remove(0);
        let net = witness_network(&inst, &c).unwrap();
        inst.k = 7;
        let v = verify_solution(&net, &inst.instance(), true);
        assert!(v.reasons.iter().any(|r| r.starts_with("budget")));
        assert!(matches!(extract_cycle(&inst, &net).unwrap(), Extraction::Failure(r) if r.starts_with("budget")));
    }

    #[test]
    fn single_star_at_a_w_terminal_hits_the_bound() {
        let inst = q3(PNorm::L2);
        let g = &inst.source.graph;
        let c = hamiltonian_cycles(g, 1).remove(0);
        let net = witness_network(&inst, &c).unwrap();
        // Replace the two Steiner points of one W-terminal by a single star
        // on it and two perpendicular tips.
        let wi = inst.w_terminals()[0];
        let wpos = inst.terminals[wi].pos.clone();
        let GadgetRole::WTerminal { w } = &inst.terminals[wi].role else { unreachable!() };
        let tips: Vec<usize> = g
            .neighbors(g.index_of(w).unwrap())
            .iter()
            .map(|&u| inst.tip_index(g.label(u), w).unwrap())
            .collect();
        let dir = |t: usize| {
            let p = inst.terminals[t].pos.to_f64();
            let q = wpos.to_f64();
            [p[0] - q[0], p[1] - q[1]]
        };
        let (a, b) = tips
            .iter()
            .flat_map(|&a| tips.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| a < b && dir(a)[0] * dir(b)[0] + dir(a)[1] * dir(b)[1] == 0.0)
            .unwrap();
        let mut star = Network::new();
        for n in net.nodes() {
            if !n.id.starts_with(&format!("s:{w}:")) {
                star.add_node(n.id.clone(), n.role, n.pos.clone()).unwrap();
            }
        }
        for (x, y) in net.edges() {
            if let (Some(x), Some(y)) = (star.index_of(&net.node(x).id), star.index_of(&net.node(y).id)) {
                star.add_edge(x, y).unwrap();
            }
        }
        // Enclosing-disc centre: w + (da + db)/2.
        let (pa, pb) = (&inst.terminals[a].pos, &inst.terminals[b].pos);
        let centre = Point::new(&pa.x + &pb.x - &wpos.x, &pa.y + &pb.y - &wpos.y).midpoint(&wpos);
        let s = star.add_steiner("star", centre).unwrap();
        for t in [wi, a, b] {
            star.add_edge(s, t).unwrap();
        }
        let b = bottleneck_of(&star, PNorm::L2).unwrap();
        assert_eq!(b.key(), Some(&int(2)));
        match extract_cycle(&inst, &star).unwrap() {
            Extraction::Failure(r) => assert!(r.starts_with("bottleneck ≥ 2^(1/p)"), "{r}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mismatched_terminals_are_an_error() {
        let inst = q3(PNorm::L2);
        let mut net = Network::new();
        net.add_terminal("x", Point::origin()).unwrap();
        assert!(matches!(extract_cycle(&inst, &net), Err(Error::TerminalMismatch(_))));
    }
}
