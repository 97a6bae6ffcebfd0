//! `bsn`: command-line front end for bottleneck Steiner networks.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or I/O error.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bsn_core::acceptance;
use bsn_core::geometry::{format_rational, lemma2_bound, parse_rational, smallest_enclosing_disc, PNorm};
use bsn_core::graph::{hamiltonian_cycles, Graph};
use bsn_core::io::{
    parse_drawing, parse_graph, parse_instance, parse_network, render_svg, write_gadget, write_network, Figure,
    ParsedInstance, SvgOptions,
};
use bsn_core::reduction::{
    build_instance, draw_orthogonal, extract_cycle, roundtrip_check, scale_drawing, validate_source, verify_gaps,
    witness_network, Extraction, GadgetInstance, OrthoDrawing, SourceGraph,
};
use bsn_core::solvers::{
    beaded_2conn_heuristic, beaded_mst_heuristic, exact_small, threshold_2conn, verify_solution, Connectivity,
    Method, Optimality, SolveReport,
};
use bsn_core::Error;

const DEFAULT_TOL: f64 = 1e-7;

#[derive(Parser)]
#[command(name = "bsn", version, about = "Bottleneck Steiner networks in planar ℓp norms")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct NormArg {
    /// Norm exponent: 1, 2, a rational such as 3/2, or inf.
    #[arg(long = "p", default_value = "2")]
    p: String,
}

impl NormArg {
    fn norm(&self) -> Result<PNorm, Failure> {
        self.p.parse().map_err(usage)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Threshold,
    BeadedMst,
    #[value(name = "beaded-2conn")]
    Beaded2Conn,
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Print the three-terminal bottleneck bound 2^(1/p).
    Lemma2 {
        #[command(flatten)]
        norm: NormArg,
    },
    /// Smallest enclosing disc of an instance's terminals.
    Sec {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Solve an instance and write a network file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "beaded-2conn")]
        method: MethodArg,
        /// Restrict Steiner points to degree 2.
        #[arg(long)]
        degree2: bool,
        /// Exact solver only: require connectivity instead of 2-connectivity.
        #[arg(long)]
        tree: bool,
        /// Override the instance's Steiner budget.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build the gadget instance of a source graph. Without a drawing the
    /// built-in best-effort drawer is used.
    Reduce {
        graph: PathBuf,
        drawing: Option<PathBuf>,
        #[command(flatten)]
        norm: NormArg,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Witness network of a Hamiltonian cycle of the source graph.
    Witness {
        instance: PathBuf,
        /// Comma-separated vertex labels in cycle order, or "auto" for the
        /// first cycle found.
        #[arg(long)]
        cycle: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Extract a Hamiltonian cycle from a network on a gadget instance.
    Extract { instance: PathBuf, network: PathBuf },
    /// Run a check and print its report.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Render an instance, network or drawing file as SVG.
    Svg {
        file: PathBuf,
        /// Also draw the smallest enclosing disc of the terminals.
        #[arg(long)]
        sec: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Exact gap certification of a gadget instance.
    Gaps {
        instance: PathBuf,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
    },
    /// Check a network against an instance.
    Solution {
        instance: PathBuf,
        network: PathBuf,
        /// Only require connectivity.
        #[arg(long)]
        connected: bool,
    },
    /// Witness/extraction roundtrip over all Hamiltonian cycles.
    Roundtrip {
        graph: PathBuf,
        drawing: PathBuf,
        #[command(flatten)]
        norm: NormArg,
    },
    /// Validate a source graph and its drawing.
    Source { graph: PathBuf, drawing: PathBuf },
}

/// Why a command did not succeed.
enum Failure {
    /// A check ran and failed: exit 1.
    Check,
    /// Usage, input or I/O problem: exit 2.
    Usage(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(usage)
        }
    }
}

fn say(json: bool, human: &str, value: serde_json::Value) {
    if json {
        println!("{value}");
    } else {
        println!("{human}");
    }
}

fn load_gadget(path: &Path) -> Result<GadgetInstance, Failure> {
    match parse_instance(&read(path)?).map_err(usage)? {
        ParsedInstance::Gadget(g) => Ok(*g),
        ParsedInstance::Plain(_) => Err(Failure::Usage(format!(
            "{}: not a gadget instance (no source section)",
            path.display()
        ))),
    }
}

fn load_source(graph: &Path, drawing: &Path) -> Result<(Graph, OrthoDrawing), Failure> {
    Ok((
        parse_graph(&read(graph)?).map_err(usage)?,
        parse_drawing(&read(drawing)?).map_err(usage)?,
    ))
}

fn solve(
    inst: &bsn_core::solvers::Instance,
    method: MethodArg,
    tree: bool,
    tol: f64,
) -> Result<SolveReport, Error> {
    match method {
        MethodArg::Threshold => {
            let (bottleneck, network) = threshold_2conn(&inst.terminals, inst.norm)?;
            Ok(SolveReport {
                network,
                bottleneck,
                method: Method::Threshold,
                optimality: Optimality::OptimalWithinTol,
                connectivity: Connectivity::Biconnected,
                lower_bound: None,
            })
        }
        MethodArg::BeadedMst => beaded_mst_heuristic(inst),
        MethodArg::Beaded2Conn => beaded_2conn_heuristic(inst),
        MethodArg::Exact => exact_small(
            inst,
            if tree { Connectivity::Connected } else { Connectivity::Biconnected },
            tol,
        ),
    }
}

fn parse_cycle(g: &Graph, spec: &str) -> Result<Vec<usize>, Failure> {
    if spec == "auto" {
        return hamiltonian_cycles(g, 1)
            .pop()
            .ok_or_else(|| Failure::Usage("the source graph has no Hamiltonian cycle".into()));
    }
    spec.split(',')
        .map(|s| {
            g.index_of(s.trim())
                .ok_or_else(|| Failure::Usage(format!("unknown vertex {s:?}")))
        })
        .collect()
}

fn cycle_labels(g: &Graph, c: &[usize]) -> Vec<String> {
    c.iter().map(|&v| g.label(v).to_string()).collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Lemma2 { norm } => {
            let norm = norm.norm()?;
            let b = lemma2_bound(norm);
            say(json, &format!("{b:.9}"), json!({"p": norm.to_string(), "bound": format!("{b:.9}")}));
        }
        Command::Sec { file, tol } => {
            let inst = parse_instance(&read(&file)?).map_err(usage)?.instance();
            let d = smallest_enclosing_disc(&inst.points(), inst.norm, tol).map_err(usage)?;
            let c = d.center_f64();
            say(
                json,
                &format!("radius {:.9} center ({:.9}, {:.9})", d.radius, c[0], c[1]),
                json!({
                    "radius": format!("{:.9}", d.radius),
                    "center": [format_rational(&d.center.x), format_rational(&d.center.y)],
                    "error_bound": d.error_bound,
                }),
            );
        }
        Command::Solve { file, method, degree2, tree, k, tol, out } => {
            let mut inst = parse_instance(&read(&file)?).map_err(usage)?.instance();
            if degree2 {
                inst.degree2_only = true;
            }
            if let Some(k) = k {
                inst.k = k;
            }
            let report = solve(&inst, method, tree, tol).map_err(usage)?;
            emit(out.as_deref(), &write_network(&report.network, inst.norm, Some(&report)))?;
            if out.is_some() {
                say(
                    json,
                    &format!(
                        "{} bottleneck {:.9} ({}, {} Steiner points)",
                        report.method,
                        report.bottleneck.value(),
                        report.optimality,
                        report.network.steiner_count()
                    ),
                    json!({
                        "method": report.method.to_string(),
                        "bottleneck": format!("{:.9}", report.bottleneck.value()),
                        "optimality": report.optimality.to_string(),
                        "steiner": report.network.steiner_count(),
                    }),
                );
            }
        }
        Command::Reduce { graph, drawing, norm, out } => {
            let norm = norm.norm()?;
            let g = parse_graph(&read(&graph)?).map_err(usage)?;
            let d = match drawing {
                Some(p) => parse_drawing(&read(&p)?).map_err(usage)?,
                None => draw_orthogonal(&g).map_err(usage)?,
            };
            let report = validate_source(&g, &d);
            if !report.ok {
                return Err(Failure::Usage(report.reasons.join("; ")));
            }
            let src = SourceGraph::new(g).map_err(usage)?;
            let (scaled, _) = scale_drawing(&d, src.n).map_err(usage)?;
            let inst = build_instance(&src, &scaled, norm).map_err(usage)?;
            emit(out.as_deref(), &write_gadget(&inst))?;
        }
        Command::Witness { instance, cycle, out } => {
            let inst = load_gadget(&instance)?;
            let c = parse_cycle(&inst.source.graph, &cycle)?;
            let net = witness_network(&inst, &c).map_err(usage)?;
            emit(out.as_deref(), &write_network(&net, inst.norm, None))?;
        }
        Command::Extract { instance, network } => {
            let inst = load_gadget(&instance)?;
            let (net, _) = parse_network(&read(&network)?).map_err(usage)?;
            match extract_cycle(&inst, &net).map_err(usage)? {
                Extraction::Cycle(c) => {
                    let labels = cycle_labels(&inst.source.graph, &c);
                    say(json, &format!("cycle {}", labels.join("-")), json!({"cycle": labels}));
                }
                Extraction::Failure(r) => {
                    say(json, &format!("failure: {r}"), json!({"failure": r}));
                    return Err(Failure::Check);
                }
            }
        }
        Command::Verify { what } => return verify(json, what),
        Command::Svg { file, sec, out } => {
            let text = read(&file)?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(usage)?;
            let mut opts = SvgOptions::default();
            let svg = if value.get("routes").is_some() {
                let d = parse_drawing(&text).map_err(usage)?;
                render_svg(&Figure::Drawing(&d), &opts)
            } else if value.get("nodes").is_some() {
                let (net, norm) = parse_network(&text).map_err(usage)?;
                render_svg(&Figure::Network(&net, norm), &opts)
            } else {
                let parsed = parse_instance(&text).map_err(usage)?;
                let inst = parsed.instance();
                opts.norm = inst.norm;
                if sec && !inst.is_empty() {
                    opts.disc = Some(smallest_enclosing_disc(&inst.points(), inst.norm, 1e-9).map_err(usage)?);
                }
                match parsed.gadget() {
                    Some(g) => render_svg(&Figure::Gadget(g), &opts),
                    None => render_svg(&Figure::Instance(&inst), &opts),
                }
            };
            emit(out.as_deref(), &svg)?;
        }
        Command::Selftest { report } => {
            let results = acceptance::run_core();
            let mut all = results.clone();
            all.push(acceptance::criterion_9(&results));
            let text = acceptance::render_report(&all);
            if let Some(p) = &report {
                fs::write(p, &text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            }
            if json {
                let rows: Vec<_> = all
                    .iter()
                    .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                    .collect();
                println!("{}", json!({ "criteria": rows }));
            } else {
                print!("{text}");
            }
            if all.iter().any(|r| !r.passed) {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn verify(json: bool, what: VerifyCommand) -> Result<(), Failure> {
    let ok = match what {
        VerifyCommand::Gaps { instance, epsilon } => {
            let inst = load_gadget(&instance)?;
            let eps = parse_rational(&epsilon).map_err(usage)?;
            let r = verify_gaps(&inst, &eps);
            let human: Vec<String> = r
                .checks
                .iter()
                .map(|c| format!("({}) {}: {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail))
                .collect();
            let rows: Vec<_> = r
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "exact": c.exact, "detail": c.detail}))
                .collect();
            say(json, &human.join("\n"), json!({"passed": r.passed, "checks": rows}));
            r.passed
        }
        VerifyCommand::Solution { instance, network, connected } => {
            let inst = parse_instance(&read(&instance)?).map_err(usage)?.instance();
            let (net, _) = parse_network(&read(&network)?).map_err(usage)?;
            let v = verify_solution(&net, &inst, !connected);
            let human = if v.ok { "ok".to_string() } else { v.reasons.join("\n") };
            say(json, &human, json!({"ok": v.ok, "reasons": v.reasons}));
            v.ok
        }
        VerifyCommand::Roundtrip { graph, drawing, norm } => {
            let norm = norm.norm()?;
            let (g, d) = load_source(&graph, &drawing)?;
            let r = roundtrip_check(&g, &d, norm).map_err(usage)?;
            say(
                json,
                &r.to_string(),
                json!({
                    "cycles": r.cycles,
                    "passed": r.passed,
                    "truncated": r.truncated,
                    "failures": r.failures,
                    "heuristic_evidence": r.heuristic_evidence.map(|(b, holds)| json!({"bottleneck": b, "meets_bound": holds})),
                }),
            );
            r.ok()
        }
        VerifyCommand::Source { graph, drawing } => {
            let (g, d) = load_source(&graph, &drawing)?;
            let r = validate_source(&g, &d);
            let human = if r.ok { "ok".to_string() } else { r.reasons.join("\n") };
            say(json, &human, json!({"ok": r.ok, "reasons": r.reasons}));
            r.ok
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("BSN_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("BSN_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(usage)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("bsn: {msg}");
            ExitCode::from(2)
        }
    }
}
