use super::instance::{terminal_network, Terminal};
use super::pairs::PairOrder;
use crate::error::{Error, Result};
use crate::geometry::{IntFrame, Length, PNorm, Point};
use crate::graph::{is_biconnected_adj, Network};

/// The optimal Steiner-free 2-connected network: the smallest pairwise
/// distance `λ` whose threshold graph (all pairs at distance `≤ λ`) is
/// 2-connected, together with that graph.
pub fn threshold_2conn(terminals: &[Terminal], norm: PNorm) -> Result<(Length, Network)> {
    if terminals.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "threshold_2conn needs at least 3 terminals, got {}",
            terminals.len()
        )));
    }
    let points: Vec<Point> = terminals.iter().map(|t| t.pos.clone()).collect();
    let order = PairOrder::new(&IntFrame::new(&points, norm));
    let g = order
        .smallest_prefix(points.len(), &[], is_biconnected_adj)
        .expect("the complete graph on ≥ 3 vertices is 2-connected");
    // At least one pair is needed, so g ≥ 1.
    let lambda = order.lengths[g - 1].clone();
    let mut net = terminal_network(terminals);
    for &(a, b) in order.prefix(g - 1) {
        net.add_edge(a as usize, b as usize)?;
    }
    Ok((lambda, net))
}
