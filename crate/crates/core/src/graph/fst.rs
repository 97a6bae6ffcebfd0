use std::collections::BTreeMap;

use super::connectivity::is_connected_adj;
use super::network::{Network, Role};
use crate::error::{Error, Result};

/// Groups the edges of `net` into full Steiner trees: two edges belong to
/// the same group iff they are linked through Steiner points. Groups are
/// ordered by their smallest edge.
pub fn fst_edge_groups(net: &Network) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = net.edges().collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // Edges meeting at a Steiner point are merged.
    let mut first_at: BTreeMap<usize, usize> = BTreeMap::new();
    for (e, &(a, b)) in edges.iter().enumerate() {
        for v in [a, b] {
            if net.node(v).role != Role::Steiner {
                continue;
            }
            match first_at.get(&v) {
                Some(&f) => {
                    let (ra, rb) = (find(&mut parent, f), find(&mut parent, e));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
                None => {
                    first_at.insert(v, e);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (e, &edge) in edges.iter().enumerate() {
        let r = find(&mut parent, e);
        groups.entry(r).or_default().push(edge);
    }
    groups.into_values().collect()
}

/// Splits every terminal into one copy per incident edge and returns the
/// connected pieces. Terminal copies are named `"{id}#{j}"` where `j` counts
/// the terminal's incident edges in edge order.
pub fn fst_decompose(net: &Network) -> Result<Vec<Network>> {
    if !is_connected_adj(&net.adjacency()) {
        return Err(Error::Disconnected);
    }
    let mut copies_used: Vec<usize> = vec![0; net.len()];
    let mut copy_name: BTreeMap<(usize, (usize, usize)), String> = BTreeMap::new();
    for (a, b) in net.edges() {
        for v in [a, b] {
            if net.node(v).role == Role::Terminal {
                let j = copies_used[v];
                copies_used[v] += 1;
                copy_name.insert((v, (a, b)), format!("{}#{}", net.node(v).id, j));
            }
        }
    }
    let mut out = Vec::new();
    for group in fst_edge_groups(net) {
        let mut piece = Network::new();
        let mut local: BTreeMap<String, usize> = BTreeMap::new();
        for &(a, b) in &group {
            let mut ends = [0usize; 2];
            for (slot, v) in [a, b].into_iter().enumerate() {
                let node = net.node(v);
                let name = match node.role {
                    Role::Terminal => copy_name[&(v, (a, b))].clone(),
                    Role::Steiner => node.id.clone(),
                };
                let idx = match local.get(&name) {
                    Some(&i) => i,
                    None => {
                        let i = piece.add_node(name.clone(), node.role, node.pos.clone())?;
                        local.insert(name, i);
                        i
                    }
                };
                ends[slot] = idx;
            }
            piece.add_edge(ends[0], ends[1])?;
        }
        out.push(piece);
    }
    Ok(out)
}
