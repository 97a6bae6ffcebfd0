//! Bottleneck Steiner networks in planar ℓp norms.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: exact-rational points, ℓp lengths, smallest enclosing discs.
//! - [`graph`]: biconnectivity, disjoint paths, Hamiltonian cycles, full
//!   Steiner tree decomposition.
//! - [`solvers`]: bottleneck evaluation, verification, threshold and beading
//!   heuristics, convex minimax placement and a small exact solver.
//! - [`reduction`]: the Hamiltonian-cycle gadget construction with exact gap
//!   certification, witness synthesis and cycle extraction.
//! - [`io`]: canonical JSON files and SVG rendering.
//! - [`acceptance`]: the end-to-end checks behind `bsn selftest`.

pub mod acceptance;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reduction;
pub mod solvers;

pub use error::{Error, Result};
