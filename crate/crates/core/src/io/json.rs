use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{format_rational, parse_rational, Length, PNorm, Point};
use crate::graph::{Graph, Network, Role};
use crate::reduction::{build_instance, GadgetInstance, GadgetRole, GadgetTerminal, OrthoDrawing, Route, SourceGraph};
use crate::solvers::{bottleneck_of, Instance, SolveReport, Terminal};

pub const FORMAT_VERSION: u32 = 1;

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Schema {
            path: "version".into(),
            message: format!("unsupported version {v}, expected {FORMAT_VERSION}"),
        });
    }
    Ok(())
}

fn point_of(x: &str, y: &str, path: impl Fn(&str) -> String) -> Result<Point> {
    let x = parse_rational(x).map_err(|e| Error::Schema {
        path: path("x"),
        message: e.to_string(),
    })?;
    let y = parse_rational(y).map_err(|e| Error::Schema {
        path: path("y"),
        message: e.to_string(),
    })?;
    Ok(Point::new(x, y))
}

// ---------------------------------------------------------------- graphs

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub version: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> GraphFile {
        GraphFile {
            version: FORMAT_VERSION,
            vertices: g.labels().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|&(a, b)| [g.label(a).to_string(), g.label(b).to_string()])
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        check_version(self.version)?;
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Graph::from_labeled(&self.vertices.iter().map(String::as_str).collect::<Vec<_>>(), &edges)
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    from_json::<GraphFile>(text)?.to_graph()
}

pub fn write_graph(g: &Graph) -> String {
    to_json(&GraphFile::from_graph(g))
}

// --------------------------------------------------------------- drawings

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouteEntry {
    pub u: String,
    pub v: String,
    pub points: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingFile {
    pub version: u32,
    pub vertices: BTreeMap<String, [i64; 2]>,
    pub routes: Vec<RouteEntry>,
}

impl DrawingFile {
    pub fn from_drawing(d: &OrthoDrawing) -> DrawingFile {
        DrawingFile {
            version: FORMAT_VERSION,
            vertices: d.vertex_pos.clone(),
            routes: d
                .routes
                .iter()
                .map(|r| RouteEntry {
                    u: r.u.clone(),
                    v: r.v.clone(),
                    points: r.points.clone(),
                })
                .collect(),
        }
    }

    pub fn to_drawing(&self) -> Result<OrthoDrawing> {
        check_version(self.version)?;
        Ok(OrthoDrawing {
            vertex_pos: self.vertices.clone(),
            routes: self
                .routes
                .iter()
                .map(|r| Route {
                    u: r.u.clone(),
                    v: r.v.clone(),
                    points: r.points.clone(),
                })
                .collect(),
        })
    }
}

pub fn parse_drawing(text: &str) -> Result<OrthoDrawing> {
    from_json::<DrawingFile>(text)?.to_drawing()
}

pub fn write_drawing(d: &OrthoDrawing) -> String {
    to_json(&DrawingFile::from_drawing(d))
}

// -------------------------------------------------------------- instances

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RoleEntry {
    WTerminal { w: String },
    Tip { u: String, w: String },
    PairMember { u: String, index: usize, twin: String },
}

impl From<&GadgetRole> for RoleEntry {
    fn from(r: &GadgetRole) -> Self {
        match r.clone() {
            GadgetRole::WTerminal { w } => RoleEntry::WTerminal { w },
            GadgetRole::Tip { u, w } => RoleEntry::Tip { u, w },
            GadgetRole::PairMember { u, index, twin } => RoleEntry::PairMember { u, index, twin },
        }
    }
}

impl From<RoleEntry> for GadgetRole {
    fn from(r: RoleEntry) -> Self {
        match r {
            RoleEntry::WTerminal { w } => GadgetRole::WTerminal { w },
            RoleEntry::Tip { u, w } => GadgetRole::Tip { u, w },
            RoleEntry::PairMember { u, index, twin } => GadgetRole::PairMember { u, index, twin },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminalEntry {
    pub id: String,
    pub x: String,
    pub y: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<RoleEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceEntry {
    pub graph: GraphFile,
    /// The scaled drawing the terminals were placed on.
    pub drawing: DrawingFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub norm: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degree2_only: bool,
    pub terminals: Vec<TerminalEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceEntry>,
}

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedInstance {
    Plain(Instance),
    Gadget(Box<GadgetInstance>),
}

impl ParsedInstance {
    /// The solver view of either variant.
    pub fn instance(&self) -> Instance {
        match self {
            ParsedInstance::Plain(i) => i.clone(),
            ParsedInstance::Gadget(g) => g.instance(),
        }
    }

    pub fn gadget(&self) -> Option<&GadgetInstance> {
        match self {
            ParsedInstance::Plain(_) => None,
            ParsedInstance::Gadget(g) => Some(g),
        }
    }
}

fn entry(id: &str, p: &Point, role: Option<RoleEntry>) -> TerminalEntry {
    TerminalEntry {
        id: id.to_string(),
        x: format_rational(&p.x),
        y: format_rational(&p.y),
        role,
    }
}

pub fn write_instance(inst: &Instance) -> String {
    to_json(&InstanceFile {
        version: FORMAT_VERSION,
        norm: inst.norm.to_string(),
        k: inst.k,
        degree2_only: inst.degree2_only,
        terminals: inst.terminals.iter().map(|t| entry(&t.id, &t.pos, None)).collect(),
        source: None,
    })
}

pub fn write_gadget(inst: &GadgetInstance) -> String {
    to_json(&InstanceFile {
        version: FORMAT_VERSION,
        norm: inst.norm.to_string(),
        k: inst.k,
        degree2_only: false,
        terminals: inst
            .terminals
            .iter()
            .map(|t| entry(&t.id, &t.pos, Some((&t.role).into())))
            .collect(),
        source: Some(SourceEntry {
            graph: GraphFile::from_graph(&inst.source.graph),
            drawing: DrawingFile::from_drawing(&inst.drawing),
        }),
    })
}

/// Parses an instance file. Files with a `source` section are gadget
/// instances; they are rebuilt from the source and must match it exactly.
pub fn parse_instance(text: &str) -> Result<ParsedInstance> {
    let file: InstanceFile = from_json(text)?;
    check_version(file.version)?;
    let norm: PNorm = file.norm.parse()?;
    let mut positions = Vec::with_capacity(file.terminals.len());
    for (i, t) in file.terminals.iter().enumerate() {
        positions.push(point_of(&t.x, &t.y, |f| format!("terminals[{i}].{f}"))?);
    }
    let Some(source) = file.source else {
        if let Some(i) = file.terminals.iter().position(|t| t.role.is_some()) {
            return Err(Error::Schema {
                path: format!("terminals[{i}].role"),
                message: "roles require a source section".into(),
            });
        }
        let plain = file
            .terminals
            .iter()
            .zip(positions)
            .map(|(t, pos)| Terminal::new(t.id.clone(), pos))
            .collect();
        let inst = Instance::new(plain, file.k, norm)?.with_degree2_only(file.degree2_only);
        return Ok(ParsedInstance::Plain(inst));
    };
    if let Some(i) = file.terminals.iter().position(|t| t.role.is_none()) {
        return Err(Error::Schema {
            path: format!("terminals[{i}].role"),
            message: "gadget terminals need a role".into(),
        });
    }
    let terminals: Vec<GadgetTerminal> = file
        .terminals
        .iter()
        .zip(positions)
        .map(|(t, pos)| GadgetTerminal {
            id: t.id.clone(),
            pos,
            role: t.role.clone().expect("checked").into(),
        })
        .collect();
    let src = SourceGraph::new(source.graph.to_graph()?)?;
    let drawing = source.drawing.to_drawing()?;
    let rebuilt = build_instance(&src, &drawing, norm)?;
    if file.k != rebuilt.k {
        return Err(Error::Invariant(format!("k = 2n: expected {}, got {}", rebuilt.k, file.k)));
    }
    if terminals != rebuilt.terminals {
        return Err(Error::Invariant(
            "gadget terminals must be the ones built from the source drawing".into(),
        ));
    }
    if file.degree2_only {
        return Err(Error::Schema {
            path: "degree2_only".into(),
            message: "not supported for gadget instances".into(),
        });
    }
    Ok(ParsedInstance::Gadget(Box::new(rebuilt)))
}

// --------------------------------------------------------------- networks

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: String,
    pub role: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BottleneckEntry {
    /// Nine decimals.
    pub value: String,
    /// The exact `p`-th power (or the length itself for the max norm), when
    /// it is rational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_power: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportEntry {
    pub method: String,
    pub optimality: String,
    pub connectivity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub version: u32,
    pub norm: String,
    pub nodes: Vec<NodeEntry>,
    pub edges: Vec<[String; 2]>,
    pub bottleneck: Option<BottleneckEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportEntry>,
}

fn bottleneck_entry(l: &Length) -> BottleneckEntry {
    BottleneckEntry {
        value: format!("{:.9}", l.value()),
        p_power: l.key().map(format_rational),
    }
}

/// Canonical network file. Edges are listed in node-index order.
pub fn write_network(net: &Network, norm: PNorm, report: Option<&SolveReport>) -> String {
    let nodes = net
        .nodes()
        .iter()
        .map(|n| NodeEntry {
            id: n.id.clone(),
            role: n.role.to_string(),
            x: format_rational(&n.pos.x),
            y: format_rational(&n.pos.y),
        })
        .collect();
    let edges = net
        .edges()
        .map(|(a, b)| [net.node(a).id.clone(), net.node(b).id.clone()])
        .collect();
    to_json(&NetworkFile {
        version: FORMAT_VERSION,
        norm: norm.to_string(),
        nodes,
        edges,
        bottleneck: bottleneck_of(net, norm).ok().as_ref().map(bottleneck_entry),
        report: report.map(|r| ReportEntry {
            method: r.method.to_string(),
            optimality: r.optimality.to_string(),
            connectivity: match r.connectivity {
                crate::solvers::Connectivity::Connected => "connected".into(),
                crate::solvers::Connectivity::Biconnected => "biconnected".into(),
            },
            lower_bound: r.lower_bound.map(|b| format!("{b:.9}")),
        }),
    })
}

/// Parses a network file and checks the stored bottleneck against the one
/// recomputed from the coordinates.
pub fn parse_network(text: &str) -> Result<(Network, PNorm)> {
    let file: NetworkFile = from_json(text)?;
    check_version(file.version)?;
    let norm: PNorm = file.norm.parse()?;
    let mut net = Network::new();
    for (i, n) in file.nodes.iter().enumerate() {
        let role = match n.role.as_str() {
            "terminal" => Role::Terminal,
            "steiner" => Role::Steiner,
            other => {
                return Err(Error::Schema {
                    path: format!("nodes[{i}].role"),
                    message: format!("unknown role {other:?}"),
                })
            }
        };
        let pos = point_of(&n.x, &n.y, |f| format!("nodes[{i}].{f}"))?;
        net.add_node(n.id.clone(), role, pos)?;
    }
    for [a, b] in &file.edges {
        net.add_edge_by_id(a, b)?;
    }
    let recomputed = bottleneck_of(&net, norm).ok().as_ref().map(bottleneck_entry);
    let stored_value = file.bottleneck.as_ref().map(|b| &b.value);
    if stored_value != recomputed.as_ref().map(|b| &b.value) {
        return Err(Error::Invariant(format!(
            "stored bottleneck {:?} differs from recomputed {:?}",
            stored_value,
            recomputed.map(|b| b.value)
        )));
    }
    Ok((net, norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational;

    fn unit_square_cycle() -> Network {
        let mut net = Network::new();
        for (i, (x, y)) in [(0, 0), (1, 0), (1, 1), (0, 1)].into_iter().enumerate() {
            net.add_terminal(format!("t{i}"), Point::from_ints(x, y)).unwrap();
        }
        for i in 0..4 {
            net.add_edge(i, (i + 1) % 4).unwrap();
        }
        net
    }

    #[test]
    fn unit_square_golden() {
        let text = write_network(&unit_square_cycle(), PNorm::L2, None);
        assert_eq!(text, include_str!("../../tests/golden/unit_square.network.json"));
        let (back, norm) = parse_network(&text).unwrap();
        assert_eq!(norm, PNorm::L2);
        assert_eq!(back, unit_square_cycle());
    }

    #[test]
    fn empty_network_has_no_bottleneck() {
        let text = write_network(&Network::new(), PNorm::L1, None);
        let file: NetworkFile = serde_json::from_str(&text).unwrap();
        assert!(file.edges.is_empty());
        assert!(file.bottleneck.is_none());
        assert!(parse_network(&text).is_ok());
    }

    #[test]
    fn tampered_bottleneck_is_rejected() {
        let text = write_network(&unit_square_cycle(), PNorm::L2, None).replace("1.000000000", "0.900000000");
        assert!(matches!(parse_network(&text), Err(Error::Invariant(_))));
    }

    #[test]
    fn minimal_instance_and_rational_roundtrip() {
        let text = r#"{"version":1,"norm":"2","k":0,"terminals":[
            {"id":"a","x":"0","y":"0"},{"id":"b","x":"7/3","y":"0"},{"id":"c","x":"0","y":"1.5"}]}"#;
        let ParsedInstance::Plain(inst) = parse_instance(text).unwrap() else { panic!() };
        assert_eq!(inst.k, 0);
        assert_eq!(inst.terminals[1].pos.x, rational(7, 3));
        let out = write_instance(&inst);
        assert!(out.contains("\"7/3\""));
        assert_eq!(parse_instance(&out).unwrap(), ParsedInstance::Plain(inst));
    }

    #[test]
    fn bad_norm_and_schema_paths() {
        let text = r#"{"version":1,"norm":"0.5","k":0,"terminals":[]}"#;
        let e = parse_instance(text).unwrap_err();
        assert!(e.to_string().contains("p must be ≥ 1"), "{e}");
        let text = r#"{"version":1,"norm":"2","k":0,"terminals":[{"id":"a","x":"0"}]}"#;
        match parse_instance(text).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "terminals[0]"),
            e => panic!("{e}"),
        }
        let text = r#"{"version":1,"norm":"2","k":"x","terminals":[]}"#;
        match parse_instance(text).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "k"),
            e => panic!("{e}"),
        }
    }
}
