use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{Length, PNorm, Point};
use crate::graph::{is_biconnected_adj, is_connected_adj, Network, Role};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Terminal {
    pub id: String,
    pub pos: Point,
}

impl Terminal {
    pub fn new(id: impl Into<String>, pos: Point) -> Self {
        Terminal { id: id.into(), pos }
    }
}

/// A bottleneck Steiner network problem: terminals, a Steiner budget `k`
/// and the active norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub terminals: Vec<Terminal>,
    pub k: usize,
    pub norm: PNorm,
    /// Restrict Steiner points to degree exactly 2.
    pub degree2_only: bool,
}

impl Instance {
    pub fn new(terminals: Vec<Terminal>, k: usize, norm: PNorm) -> Result<Instance> {
        let mut seen = HashMap::new();
        for t in &terminals {
            if seen.insert(t.id.as_str(), ()).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate terminal id {:?}", t.id)));
            }
        }
        Ok(Instance {
            terminals,
            k,
            norm,
            degree2_only: false,
        })
    }

    /// Terminals named `t0`, `t1`, … in input order.
    pub fn from_points(points: &[Point], k: usize, norm: PNorm) -> Instance {
        let terminals = points
            .iter()
            .enumerate()
            .map(|(i, p)| Terminal::new(format!("t{i}"), p.clone()))
            .collect();
        Instance {
            terminals,
            k,
            norm,
            degree2_only: false,
        }
    }

    pub fn with_degree2_only(mut self, on: bool) -> Instance {
        self.degree2_only = on;
        self
    }

    pub fn with_k(mut self, k: usize) -> Instance {
        self.k = k;
        self
    }

    pub fn points(&self) -> Vec<Point> {
        self.terminals.iter().map(|t| t.pos.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terminals.is_empty()
    }

    /// A network holding only the terminals; node `i` is terminal `i`.
    pub fn terminal_network(&self) -> Network {
        terminal_network(&self.terminals)
    }
}

pub(crate) fn terminal_network(terminals: &[Terminal]) -> Network {
    let mut net = Network::new();
    for t in terminals {
        net.add_terminal(t.id.clone(), t.pos.clone())
            .expect("terminal ids are unique");
    }
    net
}

/// Required connectivity of a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connectivity {
    /// Connected (the tree variant of the problem).
    Connected,
    /// 2-connected.
    Biconnected,
}

impl Connectivity {
    pub fn holds(self, adj: &[Vec<usize>]) -> bool {
        match self {
            Connectivity::Connected => is_connected_adj(adj),
            Connectivity::Biconnected => is_biconnected_adj(adj),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Threshold,
    BeadedMst,
    Beaded2Conn,
    Exact,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Threshold => "threshold",
            Method::BeadedMst => "beaded_mst",
            Method::Beaded2Conn => "beaded_2conn",
            Method::Exact => "exact",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Optimality {
    OptimalWithinTol,
    Heuristic,
}

impl fmt::Display for Optimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Optimality::OptimalWithinTol => "optimal_within_tol",
            Optimality::Heuristic => "heuristic",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub network: Network,
    pub bottleneck: Length,
    pub method: Method,
    pub optimality: Optimality,
    pub connectivity: Connectivity,
    /// Certified lower bound on the optimum of the searched class, when the
    /// method provides one.
    pub lower_bound: Option<f64>,
}

/// Longest edge of `net`.
pub fn bottleneck_of(net: &Network, norm: PNorm) -> Result<Length> {
    let mut best: Option<Length> = None;
    for (a, b) in net.edges() {
        let l = Length::between(norm, &net.node(a).pos, &net.node(b).pos);
        best = Some(match best {
            Some(cur) => cur.max(l),
            None => l,
        });
    }
    best.ok_or_else(|| Error::InvalidArgument("network has no edges".into()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Checks `net` against `inst`. Reasons are prefixed with `terminals:`,
/// `budget:`, `degree:` or `connectivity:`.
pub fn verify_solution(net: &Network, inst: &Instance, require_2conn: bool) -> Verdict {
    let mut reasons = Vec::new();
    for t in &inst.terminals {
        match net.index_of(&t.id) {
            None => reasons.push(format!("terminals: {:?} missing", t.id)),
            Some(i) => {
                let node = net.node(i);
                if node.role != Role::Terminal {
                    reasons.push(format!("terminals: {:?} is not a terminal node", t.id));
                } else if node.pos != t.pos {
                    reasons.push(format!("terminals: {:?} moved", t.id));
                }
            }
        }
    }
    let terminal_nodes = net.terminal_indices().count();
    if terminal_nodes != inst.terminals.len() {
        reasons.push(format!(
            "terminals: network has {terminal_nodes}, instance has {}",
            inst.terminals.len()
        ));
    }
    let s = net.steiner_count();
    if s > inst.k {
        reasons.push(format!("budget: {s} Steiner points exceed k = {}", inst.k));
    }
    if inst.degree2_only {
        let deg = net.degrees();
        for (i, n) in net.nodes().iter().enumerate() {
            if n.role == Role::Steiner && deg[i] != 2 {
                reasons.push(format!("degree: Steiner point {:?} has degree {}", n.id, deg[i]));
            }
        }
    }
    let adj = net.adjacency();
    if require_2conn {
        if !is_biconnected_adj(&adj) {
            reasons.push("connectivity: not 2-connected".into());
        }
    } else if !is_connected_adj(&adj) {
        reasons.push("connectivity: not connected".into());
    }
    Verdict {
        ok: reasons.is_empty(),
        reasons,
    }
}
