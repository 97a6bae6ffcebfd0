use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A simple undirected graph with labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges, dangling
    /// endpoints and duplicate labels.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = labels.len();
        let mut seen_labels = BTreeSet::new();
        for l in &labels {
            if !seen_labels.insert(l.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex {l:?}")));
            }
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {:?}", labels[a])));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {:?}-{:?}",
                    labels[a], labels[b]
                )));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &set {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            labels,
            adj,
            edges: set.into_iter().collect(),
        })
    }

    /// A graph on vertices labelled `"0"`, `"1"`, ….
    pub fn with_size(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Graph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn from_labeled<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownVertex(s.as_ref().to_string()))
        };
        let idx = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(labels, &idx)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a).is_some_and(|l| l.binary_search(&b).is_ok())
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert!(Graph::with_size(3, &[(0, 0)]).is_err());
        assert!(Graph::with_size(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::with_size(3, &[(0, 3)]).is_err());
        assert!(Graph::new(vec!["a".into(), "a".into()], &[]).is_err());
    }

    #[test]
    fn labelled_construction() {
        let g = Graph::from_labeled(&["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(g.has_edge(2, 1));
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(Graph::from_labeled(&["a"], &[("a", "z")]).is_err());
    }
}
