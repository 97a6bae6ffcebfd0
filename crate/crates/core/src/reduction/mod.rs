//! The reduction from Hamiltonian cycle in 2-connected cubic bipartite
//! planar graphs: source validation, drawing scaling, the gadget terminal
//! set, exact gap certification, witness synthesis and cycle extraction.

mod drawer;
pub mod fixtures;
mod gadget;
mod gaps;
mod source;
mod witness;

pub use drawer::draw_orthogonal;
pub use gadget::{build_instance, gap_bound, reduce, GadgetInstance, GadgetRole, GadgetTerminal, Region};
pub use gaps::{gap_inequality_holds, verify_gaps, GapCheck, GapReport};
pub use source::{
    min_parallel_separation, scale_drawing, validate_source, GridPoint, OrthoDrawing, Route,
    SourceGraph, ValidationReport,
};
pub use witness::{
    extract_cycle, roundtrip_check, witness_network, Extraction, RoundtripReport, HAMILTONIAN_LIMIT,
};
