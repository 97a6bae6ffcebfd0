use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::graph::Graph;
use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Terminal,
    Steiner,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Terminal => "terminal",
            Role::Steiner => "steiner",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub role: Role,
    pub pos: Point,
}

/// Terminals and Steiner points joined by straight edges.
///
/// Positions may coincide and edges may have zero length; node identity is
/// by id only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Network {
    nodes: Vec<Node>,
    edges: BTreeSet<(usize, usize)>,
    index: HashMap<String, usize>,
}

impl Network {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: impl Into<String>, role: Role, pos: Point) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::InvalidGraph(format!("duplicate node id {id:?}")));
        }
        let i = self.nodes.len();
        self.index.insert(id.clone(), i);
        self.nodes.push(Node { id, role, pos });
        Ok(i)
    }

    pub fn add_terminal(&mut self, id: impl Into<String>, pos: Point) -> Result<usize> {
        self.add_node(id, Role::Terminal, pos)
    }

    pub fn add_steiner(&mut self, id: impl Into<String>, pos: Point) -> Result<usize> {
        self.add_node(id, Role::Steiner, pos)
    }

    /// Adds an undirected edge; returns false if it was already present.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        if a >= self.nodes.len() || b >= self.nodes.len() {
            return Err(Error::InvalidGraph(format!("edge ({a}, {b}) out of range")));
        }
        if a == b {
            return Err(Error::InvalidGraph(format!(
                "self-loop at {:?}",
                self.nodes[a].id
            )));
        }
        Ok(self.edges.insert((a.min(b), a.max(b))))
    }

    pub fn add_edge_by_id(&mut self, a: &str, b: &str) -> Result<bool> {
        let ia = self.require(a)?;
        let ib = self.require(b)?;
        self.add_edge(ia, ib)
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        self.edges.remove(&(a.min(b), a.max(b)))
    }

    fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn set_position(&mut self, i: usize, pos: Point) {
        self.nodes[i].pos = pos;
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn steiner_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.role == Role::Steiner).count()
    }

    pub fn terminal_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| (n.role == Role::Terminal).then_some(i))
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// The underlying abstract graph, labelled by node id.
    pub fn graph(&self) -> Graph {
        let labels = self.nodes.iter().map(|n| n.id.clone()).collect();
        let edges: Vec<_> = self.edges.iter().copied().collect();
        Graph::new(labels, &edges).expect("network edges are always valid")
    }
}
