//! Planar ℓp metric primitives.
//!
//! Coordinates are exact rationals. Distances are reported as floats, and
//! for integer `p` (or the max norm) every comparison can be decided exactly
//! on `p`-th powers through [`Length`] and [`IntFrame`].

mod disc;
mod length;
mod norm;
mod point;

pub use disc::{bottleneck_fst3, lemma2_bound, minimax_center, smallest_enclosing_disc, Disc, Fst3};
pub use length::{approx_cmp, IntFrame, Length, APPROX_TOL};
pub use norm::PNorm;
pub use point::{format_rational, int, parse_rational, rational, Point};

/// `‖a − b‖_p` as a float.
pub fn dist(a: &Point, b: &Point, norm: PNorm) -> f64 {
    norm.dist(a, b)
}
