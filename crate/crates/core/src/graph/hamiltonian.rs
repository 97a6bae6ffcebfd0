use std::collections::BTreeSet;

use super::graph::Graph;

/// Undirected Hamiltonian cycles of `g`, at most `limit` of them.
///
/// Cycles are canonical: they start at vertex 0 and the second vertex is
/// smaller than the last, so each undirected cycle appears once. Neighbours
/// are tried in ascending order, which fixes the output order.
pub fn hamiltonian_cycles(g: &Graph, limit: usize) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut out = Vec::new();
    if n < 3 || limit == 0 {
        return out;
    }
    let mut on_path = vec![false; n];
    let mut path = vec![0];
    on_path[0] = true;
    extend(g, &mut path, &mut on_path, &mut out, limit);
    out
}

fn extend(
    g: &Graph,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let n = g.len();
    let last = *path.last().unwrap();
    if path.len() == n {
        if g.has_edge(last, 0) && path[1] < path[n - 1] {
            out.push(path.clone());
        }
        return;
    }
    for &w in g.neighbors(last) {
        if on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        extend(g, path, on_path, out, limit);
        path.pop();
        on_path[w] = false;
        if out.len() >= limit {
            return;
        }
    }
}

/// Rotates and reflects a cycle into the canonical form used by
/// [`hamiltonian_cycles`].
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    if n < 3 {
        return cycle.to_vec();
    }
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let fwd: Vec<usize> = (0..n).map(|i| cycle[(start + i) % n]).collect();
    if fwd[1] < fwd[n - 1] {
        fwd
    } else {
        std::iter::once(fwd[0]).chain(fwd[1..].iter().rev().copied()).collect()
    }
}

/// The cycle's edges as normalised pairs.
pub fn cycle_edges(cycle: &[usize]) -> BTreeSet<(usize, usize)> {
    let n = cycle.len();
    (0..n)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % n]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Whether `cycle` visits every vertex of `g` once along edges of `g`.
pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.len();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    distinct.len() == n
        && distinct.iter().all(|&v| v < n)
        && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::{k4, q3};

    #[test]
    fn small_counts() {
        let c4 = Graph::with_size(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(hamiltonian_cycles(&c4, 10), vec![vec![0, 1, 2, 3]]);
        assert_eq!(hamiltonian_cycles(&k4(), 10).len(), 3);
        assert_eq!(hamiltonian_cycles(&q3(), 100).len(), 6);
        assert_eq!(hamiltonian_cycles(&q3(), 4).len(), 4);
    }

    #[test]
    fn non_hamiltonian_graph_has_none() {
        let path = Graph::with_size(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(hamiltonian_cycles(&path, 10).is_empty());
        // K_{2,3} is bipartite with unequal sides.
        let k23 = Graph::with_size(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(hamiltonian_cycles(&k23, 10).is_empty());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical_cycle(&[2, 3, 0, 1]), vec![0, 1, 2, 3]);
        assert_eq!(canonical_cycle(&[2, 1, 0, 3]), vec![0, 1, 2, 3]);
    }
}
