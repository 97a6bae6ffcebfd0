//! Bottleneck evaluation, verification and solvers for the bottleneck
//! k-Steiner network problem.

mod beading;
mod exact;
mod instance;
mod minimax;
mod pairs;
mod threshold;

pub use beading::{bead_edge, beaded_2conn_heuristic, beaded_mst_heuristic};
pub use exact::{exact_small, EXACT_MAX_STEINER, EXACT_MAX_TERMINALS};
pub use instance::{
    bottleneck_of, verify_solution, Connectivity, Instance, Method, Optimality, SolveReport,
    Terminal, Verdict,
};
pub use minimax::{apply_placement, minimax_place, Placement};
pub use threshold::threshold_2conn;
