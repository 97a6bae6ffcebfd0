use std::collections::VecDeque;

use super::graph::Graph;
use crate::error::{Error, Result};

const UNSEEN: usize = usize::MAX;

pub fn is_connected_adj(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == adj.len()
}

/// Lowpoint DFS shared by the articulation and block searches.
struct Lowpoint<'a> {
    adj: &'a [Vec<usize>],
    disc: Vec<usize>,
    low: Vec<usize>,
    parent: Vec<usize>,
    time: usize,
}

impl<'a> Lowpoint<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Lowpoint {
            adj,
            disc: vec![UNSEEN; n],
            low: vec![0; n],
            parent: vec![UNSEEN; n],
            time: 0,
        }
    }

    /// Iterative DFS from `root`. `on_edge(v, w)` is called for tree edges
    /// and back edges to proper ancestors; `on_finish(u, w)` when child `w`
    /// of `u` is finished.
    fn run<E, F>(&mut self, root: usize, mut on_edge: E, mut on_finish: F) -> usize
    where
        E: FnMut(usize, usize),
        F: FnMut(usize, usize, &Self),
    {
        let mut root_children = 0;
        self.disc[root] = self.time;
        self.low[root] = self.time;
        self.time += 1;
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < self.adj[v].len() {
                let w = self.adj[v][top.1];
                top.1 += 1;
                if self.disc[w] == UNSEEN {
                    self.parent[w] = v;
                    self.disc[w] = self.time;
                    self.low[w] = self.time;
                    self.time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    on_edge(v, w);
                    stack.push((w, 0));
                } else if w != self.parent[v] && self.disc[w] < self.disc[v] {
                    self.low[v] = self.low[v].min(self.disc[w]);
                    on_edge(v, w);
                }
            } else {
                stack.pop();
                if let Some(&(u, _)) = stack.last() {
                    self.low[u] = self.low[u].min(self.low[v]);
                    on_finish(u, v, self);
                }
            }
        }
        root_children
    }
}

/// Articulation flags of every vertex.
pub fn articulation_points_adj(adj: &[Vec<usize>]) -> Vec<bool> {
    let n = adj.len();
    let mut art = vec![false; n];
    let mut lp = Lowpoint::new(adj);
    for root in 0..n {
        if lp.disc[root] != UNSEEN {
            continue;
        }
        let children = lp.run(
            root,
            |_, _| {},
            |u, w, lp| {
                if u != root && lp.low[w] >= lp.disc[u] {
                    art[u] = true;
                }
            },
        );
        if children > 1 {
            art[root] = true;
        }
    }
    art
}

/// Connected, at least three vertices, and no articulation vertex.
pub fn is_biconnected_adj(adj: &[Vec<usize>]) -> bool {
    adj.len() >= 3 && is_connected_adj(adj) && !articulation_points_adj(adj).iter().any(|&a| a)
}

/// Vertex sets of the biconnected components (blocks). Isolated vertices
/// belong to no block; a bridge forms a two-vertex block.
pub fn blocks_adj(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut blocks = Vec::new();
    let mut lp = Lowpoint::new(adj);
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if lp.disc[root] != UNSEEN {
            continue;
        }
        let edge_cell = std::cell::RefCell::new(&mut edge_stack);
        let blocks_cell = std::cell::RefCell::new(&mut blocks);
        lp.run(
            root,
            |v, w| edge_cell.borrow_mut().push((v, w)),
            |u, w, lp| {
                if lp.low[w] >= lp.disc[u] {
                    let mut stack = edge_cell.borrow_mut();
                    let mut verts = Vec::new();
                    while let Some((a, b)) = stack.pop() {
                        verts.push(a);
                        verts.push(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    verts.sort_unstable();
                    verts.dedup();
                    blocks_cell.borrow_mut().push(verts);
                }
            },
        );
    }
    blocks
}

/// Maximum number of internally vertex-disjoint `u`–`v` paths, by unit
/// vertex-capacity max-flow on the split graph.
pub fn disjoint_paths_adj(adj: &[Vec<usize>], u: usize, v: usize) -> usize {
    // Vertex x becomes x_in = 2x, x_out = 2x + 1.
    let n = adj.len();
    let mut flow = FlowNet::new(2 * n);
    let big = n + 1;
    for x in 0..n {
        let cap = if x == u || x == v { big } else { 1 };
        flow.add_arc(2 * x, 2 * x + 1, cap);
    }
    for (a, list) in adj.iter().enumerate() {
        for &b in list {
            flow.add_arc(2 * a + 1, 2 * b, 1);
        }
    }
    flow.max_flow(2 * u + 1, 2 * v)
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, a: usize, b: usize, cap: usize) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(cap);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut queue = VecDeque::from([s]);
            via[s] = usize::MAX - 1;
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for &e in &self.head[x] {
                    let y = self.to[e];
                    if self.cap[e] > 0 && via[y] == usize::MAX {
                        via[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if via[t] == usize::MAX {
                return total;
            }
            let mut x = t;
            while x != s {
                let e = via[x];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                x = self.to[e ^ 1];
            }
            total += 1;
        }
    }
}

pub fn is_connected(g: &Graph) -> bool {
    is_connected_adj(g.adjacency())
}

/// True iff `g` is connected, has at least three vertices and no
/// articulation vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    is_biconnected_adj(g.adjacency())
}

pub fn articulation_points(g: &Graph) -> Vec<usize> {
    articulation_points_adj(g.adjacency())
        .iter()
        .enumerate()
        .filter_map(|(i, &a)| a.then_some(i))
        .collect()
}

/// Maximum number of internally vertex-disjoint paths between `u` and `v`.
pub fn disjoint_paths(g: &Graph, u: usize, v: usize) -> Result<usize> {
    if u >= g.len() || v >= g.len() {
        return Err(Error::UnknownVertex(format!("{}", u.max(v))));
    }
    if u == v {
        return Err(Error::InvalidArgument("u and v must differ".into()));
    }
    Ok(disjoint_paths_adj(g.adjacency(), u, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::with_size(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn k4() -> Graph {
        Graph::with_size(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn biconnectivity_examples() {
        assert!(is_biconnected(&cycle(4)));
        let path = Graph::with_size(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_biconnected(&path));
        assert_eq!(articulation_points(&path), vec![1]);
        let bowtie =
            Graph::with_size(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(!is_biconnected(&bowtie));
        assert_eq!(articulation_points(&bowtie), vec![2]);
        let k2 = Graph::with_size(2, &[(0, 1)]).unwrap();
        assert!(!is_biconnected(&k2));
    }

    #[test]
    fn disjoint_path_examples() {
        assert_eq!(disjoint_paths(&cycle(4), 0, 2).unwrap(), 2);
        let path = Graph::with_size(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(disjoint_paths(&path, 0, 2).unwrap(), 1);
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    assert_eq!(disjoint_paths(&k4(), u, v).unwrap(), 3);
                }
            }
        }
        assert!(disjoint_paths(&path, 1, 1).is_err());
        assert!(disjoint_paths(&path, 0, 9).is_err());
    }

    #[test]
    fn blocks_of_bowtie_with_tail() {
        let g = Graph::with_size(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)])
            .unwrap();
        let mut b = blocks_adj(g.adjacency());
        b.sort();
        assert_eq!(b, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5]]);
    }
}
