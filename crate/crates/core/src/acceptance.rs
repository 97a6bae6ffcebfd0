//! End-to-end acceptance checks. Each criterion returns a pass/fail line
//! with a deterministic detail string; timing is left to the caller so
//! that reports are byte-identical across runs.

use std::fmt::Write;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{int, lemma2_bound, rational, smallest_enclosing_disc, Length, PNorm, Point};
use crate::graph::{cycle_edges, hamiltonian_cycles, is_biconnected_adj, Graph, Network};
use crate::oracle;
use crate::reduction::fixtures::q3_fixture;
use crate::reduction::{extract_cycle, gap_bound, reduce, verify_gaps, witness_network, Extraction, GadgetInstance, GadgetRole};
use crate::solvers::{
    beaded_2conn_heuristic, beaded_mst_heuristic, bottleneck_of, exact_small, threshold_2conn, verify_solution,
    Connectivity, Instance, Terminal,
};

/// Right-triangle radius and centre tolerance.
pub const TRIANGLE_TOL: f64 = 1e-6;
/// SEC solver tolerance used throughout.
pub const SEC_TOL: f64 = 1e-9;
/// SEC vs grid-search oracle.
pub const SEC_ORACLE_TOL: f64 = 1e-3;
/// Exact solver vs grid oracle.
pub const EXACT_ORACLE_TOL: f64 = 1e-3;
/// Exact solver internal tolerance.
pub const EXACT_TOL: f64 = 1e-7;
/// Runtime budgets in seconds, per criterion 1..=9 (criterion 9 reruns 1..=8).
pub const BUDGET_SECS: [f64; 9] = [1.0, 30.0, 10.0, 60.0, 300.0, 300.0, 60.0, 120.0, 900.0];

pub const SEC_INSTANCES_PER_NORM: usize = 100;
pub const THRESHOLD_INSTANCES: usize = 50;
pub const EXACT_INSTANCES: usize = 20;
pub const GRAPH_INSTANCES: usize = 200;

const SEED: u64 = 0x00b5_72c0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn result(id: u8, name: &'static str, failures: Vec<String>, summary: String) -> CriterionResult {
    let passed = failures.is_empty();
    let detail = if passed {
        summary
    } else {
        format!("{summary}; failures: {}", failures.join(" | "))
    };
    CriterionResult { id, name, passed, detail }
}

fn triangle_norms() -> Vec<PNorm> {
    vec![
        PNorm::L1,
        PNorm::new(3, 2).unwrap(),
        PNorm::L2,
        PNorm::integer(3).unwrap(),
        PNorm::integer(4).unwrap(),
        PNorm::Infinity,
    ]
}

/// 1. The smallest enclosing disc of (0,0), (0,2), (2,0) has radius
///    `2^(1/p)` (1 for the max norm) and centre (1,1).
pub fn criterion_1() -> CriterionResult {
    let pts = [Point::from_ints(0, 0), Point::from_ints(0, 2), Point::from_ints(2, 0)];
    let mut failures = Vec::new();
    let mut radii = Vec::new();
    for norm in triangle_norms() {
        let expected = match norm {
            PNorm::Infinity => 1.0,
            _ => 2f64.powf(1.0 / norm.exponent()),
        };
        match smallest_enclosing_disc(&pts, norm, SEC_TOL) {
            Ok(d) => {
                let c = d.center_f64();
                if (d.radius - expected).abs() > TRIANGLE_TOL
                    || (c[0] - 1.0).abs() > TRIANGLE_TOL
                    || (c[1] - 1.0).abs() > TRIANGLE_TOL
                {
                    failures.push(format!("p={norm}: radius {:.9} centre ({:.9}, {:.9})", d.radius, c[0], c[1]));
                }
                if (lemma2_bound(norm) - expected).abs() > TRIANGLE_TOL {
                    failures.push(format!("p={norm}: closed form {:.9}", lemma2_bound(norm)));
                }
                radii.push(format!("p={norm}: {:.6}", d.radius));
            }
            Err(e) => failures.push(format!("p={norm}: {e}")),
        }
    }
    result(1, "right-triangle closed form", failures, radii.join(", "))
}

fn random_rational(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    rational(rng.gen_range(-60..=60), rng.gen_range(1..=7))
}

/// 2. SEC radius matches the grid-search oracle on random rational instances.
pub fn criterion_2() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for norm in [PNorm::L1, PNorm::L2, PNorm::Infinity] {
        for i in 0..SEC_INSTANCES_PER_NORM {
            let m = rng.gen_range(3..=6);
            let pts: Vec<Point> = (0..m)
                .map(|_| Point::new(random_rational(&mut rng), random_rational(&mut rng)))
                .collect();
            let f: Vec<[f64; 2]> = pts.iter().map(Point::to_f64).collect();
            let oracle = oracle::grid_sec_radius(&f, norm);
            match smallest_enclosing_disc(&pts, norm, SEC_TOL) {
                Ok(d) => {
                    let err = (d.radius - oracle).abs();
                    worst = worst.max(err);
                    if err > SEC_ORACLE_TOL {
                        failures.push(format!("p={norm} #{i}: {:.9} vs oracle {:.9}", d.radius, oracle));
                    }
                }
                Err(e) => failures.push(format!("p={norm} #{i}: {e}")),
            }
        }
    }
    result(
        2,
        "SEC oracle equivalence",
        failures,
        format!("{} instances, max |Δ| = {worst:.2e}", 3 * SEC_INSTANCES_PER_NORM),
    )
}

fn q3(norm: PNorm) -> GadgetInstance {
    let (g, d) = q3_fixture();
    reduce(&g, &d, norm).expect("Q3 fixture reduces")
}

fn count_roles(inst: &GadgetInstance) -> (usize, usize) {
    let w = inst
        .terminals
        .iter()
        .filter(|t| matches!(t.role, GadgetRole::WTerminal { .. }))
        .count();
    let tips = inst.terminals.iter().filter(|t| t.role.is_tip()).count();
    (w, tips)
}

/// 3. Q3 end to end at p ∈ {1, 2}.
pub fn criterion_3() -> CriterionResult {
    let mut failures = Vec::new();
    let (g, _) = q3_fixture();
    let cycles = hamiltonian_cycles(&g, usize::MAX);
    let brute = oracle::permutation_hamiltonian_count(&g);
    if cycles.len() != 6 || brute != 6 {
        failures.push(format!("cycles: search {} oracle {brute}", cycles.len()));
    }
    let mut terminals = 0;
    for norm in [PNorm::L1, PNorm::L2] {
        let inst = q3(norm);
        terminals = inst.terminals.len();
        let (w, tips) = count_roles(&inst);
        if (inst.k, inst.delta, w, tips) != (8, 18, 4, 12) {
            failures.push(format!("p={norm}: k={} Δ={} W={w} tips={tips}", inst.k, inst.delta));
        }
        let gaps = verify_gaps(&inst, &rational(1, 10));
        for c in &gaps.checks {
            if !c.passed || !c.exact {
                failures.push(format!("p={norm}: gap ({}) {}", c.name, c.detail));
            }
        }
        let one = Length::from_rational(norm, &int(1));
        for c in &cycles {
            let net = match witness_network(&inst, c) {
                Ok(n) => n,
                Err(e) => {
                    failures.push(format!("p={norm}: {e}"));
                    continue;
                }
            };
            let b = bottleneck_of(&net, norm).expect("edges");
            let ok = net.steiner_count() == 8
                && b.key() == one.key()
                && is_biconnected_adj(&net.adjacency())
                && matches!(extract_cycle(&inst, &net), Ok(Extraction::Cycle(e)) if cycle_edges(&e) == cycle_edges(c));
            if !ok {
                failures.push(format!("p={norm}: cycle {c:?} failed the witness roundtrip"));
            }
        }
    }
    result(
        3,
        "Q3 reduction end to end",
        failures,
        format!("k=8, Δ=18, 4 W-terminals, 12 tips, {terminals} terminals, 6 cycles roundtrip at p=1,2"),
    )
}

/// 4. `threshold_2conn` equals the exhaustive-subset optimum exactly.
pub fn criterion_4() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let norms = [PNorm::L1, PNorm::L2, PNorm::Infinity];
    let mut failures = Vec::new();
    for i in 0..THRESHOLD_INSTANCES {
        let norm = norms[i % 3];
        let pts: Vec<[i64; 2]> = (0..7).map(|_| [rng.gen_range(0..=20), rng.gen_range(0..=20)]).collect();
        let terminals: Vec<Terminal> = pts
            .iter()
            .enumerate()
            .map(|(j, p)| Terminal::new(format!("t{j}"), Point::from_ints(p[0], p[1])))
            .collect();
        let expected = oracle::brute_force_2conn_key(&pts, norm).expect("7 points admit a 2-connected graph");
        match threshold_2conn(&terminals, norm) {
            Ok((l, _)) => {
                let got = l.key().and_then(|k| k.to_integer().to_i128());
                if got != Some(expected) {
                    failures.push(format!("#{i} p={norm}: key {got:?} vs oracle {expected}"));
                }
            }
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    result(
        4,
        "threshold optimality",
        failures,
        format!("{THRESHOLD_INSTANCES} seven-terminal instances at p=1,2,∞, exact keys equal"),
    )
}

/// The shared instances of criteria 5 and 6: four terminals in [0,10]²,
/// `k = i mod 3`, p = 2.
pub fn exact_instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    (0..EXACT_INSTANCES)
        .map(|i| {
            let pts: Vec<Point> = (0..4)
                .map(|_| Point::from_ints(rng.gen_range(0..=10), rng.gen_range(0..=10)))
                .collect();
            Instance::from_points(&pts, i % 3, PNorm::L2)
        })
        .collect()
}

/// 5. `exact_small` matches the grid oracle; unit square with k=0 is 1.
pub fn criterion_5() -> CriterionResult {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, inst) in exact_instances().iter().enumerate() {
        let f: Vec<[f64; 2]> = inst.points().iter().map(Point::to_f64).collect();
        let expected = oracle::grid_steiner_2conn(&f, inst.k, inst.norm);
        match exact_small(inst, Connectivity::Biconnected, EXACT_TOL) {
            Ok(r) => {
                let v = r.bottleneck.value();
                worst = worst.max((v - expected).abs());
                if (v - expected).abs() > EXACT_ORACLE_TOL {
                    failures.push(format!("#{i} k={}: {v:.9} vs oracle {expected:.9}", inst.k));
                }
            }
            Err(e) => failures.push(format!("#{i}: {e}")),
        }
    }
    let square: Vec<Point> = [(0, 0), (1, 0), (1, 1), (0, 1)]
        .iter()
        .map(|&(x, y)| Point::from_ints(x, y))
        .collect();
    match exact_small(&Instance::from_points(&square, 0, PNorm::L2), Connectivity::Biconnected, EXACT_TOL) {
        Ok(r) if r.bottleneck.key() == Some(&int(1)) => {}
        Ok(r) => failures.push(format!("unit square: {}", r.bottleneck)),
        Err(e) => failures.push(format!("unit square: {e}")),
    }
    result(
        5,
        "exact solver vs grid oracle",
        failures,
        format!("{EXACT_INSTANCES} instances, max |Δ| = {worst:.2e}; unit square = 1 exactly"),
    )
}

/// 6. `beaded_mst` within twice the exact tree optimum; `beaded_2conn` on
///    the Q3 gadget reaches bottleneck 1.
pub fn criterion_6() -> CriterionResult {
    let mut failures = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for (i, inst) in exact_instances().iter().enumerate() {
        let tree = exact_small(inst, Connectivity::Connected, EXACT_TOL);
        let mst = beaded_mst_heuristic(inst);
        match (tree, mst) {
            (Ok(t), Ok(m)) => {
                let (t, m) = (t.bottleneck.value(), m.bottleneck.value());
                if t > 0.0 {
                    worst_ratio = worst_ratio.max(m / t);
                }
                if m > 2.0 * t + EXACT_TOL {
                    failures.push(format!("#{i}: beaded_mst {m:.9} > 2 × {t:.9}"));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(format!("#{i}: {e}")),
        }
    }
    let inst = q3(PNorm::L2);
    let b2 = match beaded_2conn_heuristic(&inst.instance()) {
        Ok(r) => {
            let one = Length::from_rational(PNorm::L2, &int(1));
            if !r.bottleneck.le(&one) {
                failures.push(format!("Q3 beaded_2conn bottleneck {}", r.bottleneck));
            }
            let v = verify_solution(&r.network, &inst.instance(), true);
            if !v.ok {
                failures.push(format!("Q3 beaded_2conn: {}", v.reasons.join("; ")));
            }
            format!("{:.9}", r.bottleneck.value())
        }
        Err(e) => {
            failures.push(format!("Q3 beaded_2conn: {e}"));
            "n/a".into()
        }
    };
    result(
        6,
        "heuristic sanity",
        failures,
        format!("max beaded_mst/exact tree ratio {worst_ratio:.4}; Q3 beaded_2conn bottleneck {b2}"),
    )
}

/// 7. `is_biconnected` agrees with the pairwise disjoint-paths criterion.
pub fn criterion_7() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut failures = Vec::new();
    let mut positives = 0;
    for i in 0..GRAPH_INSTANCES {
        let n = rng.gen_range(1..=10);
        let density: f64 = rng.gen_range(0.15..0.8);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(density) {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::with_size(n, &edges).expect("simple graph");
        let fast = crate::graph::is_biconnected(&g);
        let slow = oracle::menger_biconnected(g.adjacency());
        positives += usize::from(slow);
        if fast != slow {
            failures.push(format!("#{i}: n={n} edges={edges:?}: {fast} vs {slow}"));
        }
    }
    result(
        7,
        "connectivity cross-check",
        failures,
        format!("{GRAPH_INSTANCES} random graphs, {positives} 2-connected"),
    )
}

/// Classifies one network against the dichotomy. Returns a short tag, or
/// an error message when the network lands in the forbidden interval.
fn classify(inst: &GadgetInstance, name: &str, net: &Network) -> Result<String, String> {
    let norm = inst.norm;
    let verdict = verify_solution(net, &inst.instance(), true);
    let b = bottleneck_of(net, norm).map_err(|e| format!("{name}: {e}"))?;
    if !verdict.ok {
        return Ok(format!("{name}: not a verified 2-connected solution ({:.6})", b.value()));
    }
    let one = Length::from_rational(norm, &int(1));
    let bound = if norm.is_exact() {
        Length::from_key(norm, int(2))
    } else {
        Length::approx(gap_bound(norm))
    };
    if b.le(&one) {
        return match extract_cycle(inst, net) {
            Ok(Extraction::Cycle(_)) => Ok(format!("{name}: ≤ 1, cycle extracted")),
            Ok(Extraction::Failure(r)) => Err(format!("{name}: bottleneck ≤ 1 but extraction failed: {r}")),
            Err(e) => Err(format!("{name}: {e}")),
        };
    }
    if b.ge(&bound) {
        return Ok(format!("{name}: ≥ bound ({:.6})", b.value()));
    }
    Err(format!("{name}: bottleneck {:.9} inside (1, {:.9})", b.value(), bound.value()))
}

/// 8. On Q3 with k = 8, every network a shipped method produces is either
///    ≤ 1 (and yields a cycle) or ≥ 2^(1/p); none lies strictly between.
pub fn criterion_8() -> CriterionResult {
    let mut failures = Vec::new();
    let mut tags = Vec::new();
    for norm in [PNorm::L1, PNorm::L2] {
        let inst = q3(norm);
        let plain = inst.instance();
        let mut nets: Vec<(String, Network)> = Vec::new();
        match threshold_2conn(&plain.terminals, norm) {
            Ok((_, n)) => nets.push(("threshold".into(), n)),
            Err(e) => failures.push(format!("p={norm} threshold: {e}")),
        }
        for (name, r) in [("beaded_mst", beaded_mst_heuristic(&plain)), ("beaded_2conn", beaded_2conn_heuristic(&plain))] {
            match r {
                Ok(r) => nets.push((name.into(), r.network)),
                Err(e) => failures.push(format!("p={norm} {name}: {e}")),
            }
        }
        match exact_small(&plain, Connectivity::Biconnected, EXACT_TOL) {
            Ok(r) => nets.push(("exact".into(), r.network)),
            Err(_) => tags.push(format!("p={norm} exact: not applicable (instance too large)")),
        }
        for (j, c) in hamiltonian_cycles(&inst.source.graph, usize::MAX).iter().enumerate() {
            match witness_network(&inst, c) {
                Ok(n) => nets.push((format!("witness#{j}"), n)),
                Err(e) => failures.push(format!("p={norm} witness#{j}: {e}")),
            }
        }
        for (name, net) in &nets {
            match classify(&inst, name, net) {
                Ok(tag) => tags.push(format!("p={norm} {tag}")),
                Err(e) => failures.push(format!("p={norm} {e}")),
            }
        }
    }
    result(8, "dichotomy on Q3", failures, tags.join("; "))
}

/// Criteria 1–8 in order.
pub fn run_core() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ]
}

/// 9. Two runs of criteria 1–8 render byte-identical reports.
pub fn criterion_9(first: &[CriterionResult]) -> CriterionResult {
    let a = render_report(first);
    let b = render_report(&run_core());
    let failures = if a == b {
        Vec::new()
    } else {
        vec!["reports differ between runs".into()]
    };
    result(9, "determinism", failures, format!("{} report bytes identical across runs", a.len()))
}

/// The full report, one line per criterion.
pub fn render_report(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        let _ = writeln!(out, "{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "{passed}/{} criteria pass", results.len());
    out
}
