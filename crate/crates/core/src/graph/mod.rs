//! Abstract graph machinery: connectivity, disjoint paths, cubic bipartite
//! validation, Hamiltonian cycles and full Steiner tree decomposition.

mod connectivity;
mod cubic;
mod fst;
#[allow(clippy::module_inception)]
mod graph;
mod hamiltonian;
mod network;

pub use connectivity::{
    articulation_points, articulation_points_adj, blocks_adj, disjoint_paths, disjoint_paths_adj,
    is_biconnected, is_biconnected_adj, is_connected, is_connected_adj,
};
pub use cubic::{validate_cubic_bipartite, Bipartition};
pub use fst::{fst_decompose, fst_edge_groups};
pub use graph::Graph;
pub use hamiltonian::{canonical_cycle, cycle_edges, hamiltonian_cycles, is_hamiltonian_cycle};
pub use network::{Network, Node, Role};

/// Small named graphs shared by tests and fixtures.
pub mod test_graphs {
    use super::Graph;

    /// The 3-cube, vertices labelled by their bit strings.
    pub fn q3() -> Graph {
        let labels: Vec<String> = (0..8).map(|v| format!("{v:03b}")).collect();
        let mut edges = Vec::new();
        for v in 0..8usize {
            for bit in 0..3 {
                let w = v ^ (1 << bit);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Graph::new(labels, &edges).unwrap()
    }

    pub fn k4() -> Graph {
        Graph::with_size(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// The prism `C_m × K_2`: outer cycle `o0..`, inner cycle `i0..`, spokes.
    pub fn prism(m: usize) -> Graph {
        let mut labels: Vec<String> = (0..m).map(|j| format!("o{j}")).collect();
        labels.extend((0..m).map(|j| format!("i{j}")));
        let mut edges = Vec::new();
        for j in 0..m {
            edges.push((j, (j + 1) % m));
            edges.push((m + j, m + (j + 1) % m));
            edges.push((j, m + j));
        }
        Graph::new(labels, &edges).unwrap()
    }
}
