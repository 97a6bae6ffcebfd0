use super::norm::PNorm;
use super::point::Point;
use crate::error::{Error, Result};

const PHI_INV: f64 = 0.618_033_988_749_894_9;
const MAX_ITERS: usize = 400;
/// Relative slack under which two objective values count as tied.
const TIE_REL: f64 = 4e-15;

/// A disc of the active ℓp norm.
#[derive(Clone, Debug)]
pub struct Disc {
    pub center: Point,
    pub radius: f64,
    /// Upper bound on `radius − (true minimum radius)`.
    pub error_bound: f64,
}

impl Disc {
    pub fn center_f64(&self) -> [f64; 2] {
        self.center.to_f64()
    }

    pub fn contains(&self, p: &Point, norm: PNorm, tol: f64) -> bool {
        norm.dist_f64(self.center_f64(), p.to_f64()) <= self.radius + tol
    }
}

/// Smallest ℓp disc enclosing `points`.
///
/// The objective `c ↦ max_i ‖c − x_i‖_p` is convex, so a nested
/// golden-section search over the bounding box (outer over x, inner over y)
/// converges for every `p`, including the piecewise-linear `p ∈ {1, ∞}`.
/// When the optimal centres form a segment or polygon the search keeps the
/// one nearest the bounding-box centre, first in x and then in y.
pub fn smallest_enclosing_disc(points: &[Point], norm: PNorm, tol: f64) -> Result<Disc> {
    if points.is_empty() {
        return Err(Error::NoPoints);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let mut distinct: Vec<&Point> = points.iter().collect();
    distinct.sort();
    distinct.dedup();
    match distinct.as_slice() {
        [p] => {
            return Ok(Disc {
                center: (*p).clone(),
                radius: 0.0,
                error_bound: 0.0,
            })
        }
        [a, b] => {
            return Ok(Disc {
                center: a.midpoint(b),
                radius: norm.dist(a, b) / 2.0,
                error_bound: 0.0,
            })
        }
        _ => {}
    }
    let pts: Vec<[f64; 2]> = distinct.iter().map(|p| p.to_f64()).collect();
    let (center, radius, error_bound) = minimax_center(&pts, norm, tol);
    Ok(Disc {
        center: Point::from_f64(center[0], center[1])?,
        radius,
        error_bound,
    })
}

/// Float-coordinate variant used by the placement solvers.
pub fn minimax_center(pts: &[[f64; 2]], norm: PNorm, tol: f64) -> ([f64; 2], f64, f64) {
    let objective = |c: [f64; 2]| {
        pts.iter()
            .map(|&p| norm.dist_f64(c, p))
            .fold(0.0f64, f64::max)
    };
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if pts.len() == 1 {
        return (pts[0], 0.0, 0.0);
    }
    let target = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];

    let outer_tol = tol / 5.0;
    let outer_iters = iterations_needed(hi[0] - lo[0], outer_tol);
    // Inner errors can flip outer comparisons; keep their total well under tol.
    let inner_tol = tol / (12.0 * (outer_iters as f64 + 1.0) * 1.7);
    // Outer values are inner minima, each off by up to ~inner_tol.
    let outer_tie = 3.4 * inner_tol;

    let inner = |x: f64| {
        golden_section(lo[1], hi[1], target[1], inner_tol, 0.0, |y| objective([x, y]))
    };
    let outer = golden_section(lo[0], hi[0], target[0], outer_tol, outer_tie, |x| {
        inner(x).value
    });
    let best_inner = inner(outer.x);
    let center = [outer.x, best_inner.x];
    let radius = objective(center);
    let tie = TIE_REL * (1.0 + radius);
    let error_bound = outer.width
        + best_inner.width
        + outer.iterations as f64 * 1.7 * (2.0 * inner_tol + outer_tie + tie)
        + best_inner.iterations as f64 * 1.7 * tie;
    (center, radius, error_bound)
}

struct LineMin {
    x: f64,
    value: f64,
    width: f64,
    iterations: usize,
}

fn iterations_needed(width: f64, tol: f64) -> usize {
    if width <= tol {
        0
    } else {
        ((width / tol).ln() / (1.0 / PHI_INV).ln()).ceil() as usize
    }
}

/// Golden-section search for a convex function on `[a, b]`.
///
/// Keeps a bracket that contains the minimiser closest to `target`; on ties
/// the half nearer `target` survives. Values within `tie_abs` plus a
/// relative float slack count as ties.
fn golden_section<F: FnMut(f64) -> f64>(
    mut a: f64,
    mut b: f64,
    target: f64,
    tol: f64,
    tie_abs: f64,
    mut f: F,
) -> LineMin {
    let mut iterations = 0;
    if b - a > tol {
        let mut c1 = b - PHI_INV * (b - a);
        let mut c2 = a + PHI_INV * (b - a);
        let mut f1 = f(c1);
        let mut f2 = f(c2);
        while b - a > tol && iterations < MAX_ITERS {
            iterations += 1;
            let tie = tie_abs + TIE_REL * (1.0 + f1.abs().max(f2.abs()));
            let keep_left = if (f1 - f2).abs() <= tie {
                target <= (c1 + c2) / 2.0
            } else {
                f1 < f2
            };
            if keep_left {
                b = c2;
                c2 = c1;
                f2 = f1;
                c1 = b - PHI_INV * (b - a);
                f1 = f(c1);
            } else {
                a = c1;
                c1 = c2;
                f1 = f2;
                c2 = a + PHI_INV * (b - a);
                f2 = f(c2);
            }
        }
    }
    let x = target.clamp(a, b);
    LineMin {
        x,
        value: f(x),
        width: b - a,
        iterations,
    }
}

/// Optimal single-Steiner-point star on three terminals.
#[derive(Clone, Debug)]
pub struct Fst3 {
    pub steiner: Point,
    pub bottleneck: f64,
}

/// The minimum-bottleneck full Steiner tree with one Steiner point on
/// `v, v1, v2`: the Steiner point sits at a smallest-enclosing-disc centre
/// and the bottleneck is that disc's radius.
pub fn bottleneck_fst3(v: &Point, v1: &Point, v2: &Point, norm: PNorm, tol: f64) -> Result<Fst3> {
    let disc = smallest_enclosing_disc(&[v.clone(), v1.clone(), v2.clone()], norm, tol)?;
    let c = disc.center_f64();
    let bottleneck = [v, v1, v2]
        .iter()
        .map(|p| norm.dist_f64(c, p.to_f64()))
        .fold(0.0, f64::max);
    Ok(Fst3 {
        steiner: disc.center,
        bottleneck,
    })
}

/// `2^(1/p)`: the least bottleneck of a one-Steiner-point tree joining a
/// point to two axis-aligned neighbours at distance ≥ 2.
pub fn lemma2_bound(norm: PNorm) -> f64 {
    match norm {
        PNorm::Infinity => 1.0,
        PNorm::Finite { num, den } => 2f64.powf(den as f64 / num as f64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
    }

    #[test]
    fn empty_input_is_an_error() {
        let err = smallest_enclosing_disc(&[], PNorm::L2, 1e-9).unwrap_err();
        assert_eq!(err.to_string(), "no points");
    }

    #[test]
    fn singleton_and_pair() {
        let d = smallest_enclosing_disc(&pts(&[(5, 5)]), PNorm::L2, 1e-9).unwrap();
        assert_eq!(d.center, Point::from_ints(5, 5));
        assert_eq!(d.radius, 0.0);
        let n3 = PNorm::integer(3).unwrap();
        let d = smallest_enclosing_disc(&pts(&[(0, 0), (4, 0)]), n3, 1e-9).unwrap();
        assert_eq!(d.center, Point::from_ints(2, 0));
        assert_eq!(d.radius, 2.0);
    }

    #[test]
    fn right_triangle_all_norms() {
        let tri = pts(&[(0, 0), (0, 2), (2, 0)]);
        for (norm, r) in [
            (PNorm::L1, 2.0),
            (PNorm::L2, 2f64.sqrt()),
            (PNorm::Infinity, 1.0),
        ] {
            let d = smallest_enclosing_disc(&tri, norm, 1e-10).unwrap();
            assert!((d.radius - r).abs() < 1e-8, "{norm}: {}", d.radius);
            let c = d.center_f64();
            assert!((c[0] - 1.0).abs() < 1e-7 && (c[1] - 1.0).abs() < 1e-7, "{norm}: {c:?}");
            assert!(d.error_bound <= 1e-10, "{norm}: bound {}", d.error_bound);
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(lemma2_bound(PNorm::L1), 2.0);
        assert!((lemma2_bound(PNorm::L2) - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert_eq!(lemma2_bound(PNorm::Infinity), 1.0);
    }

    #[test]
    fn degenerate_fst3() {
        let p = Point::from_ints(1, 1);
        let t = bottleneck_fst3(&p, &p, &p, PNorm::integer(3).unwrap(), 1e-9).unwrap();
        assert_eq!(t.steiner, p);
        assert_eq!(t.bottleneck, 0.0);
    }

    #[test]
    fn collinear_points_use_extreme_pair() {
        let d = smallest_enclosing_disc(&pts(&[(0, 0), (1, 0), (6, 0)]), PNorm::L2, 1e-10).unwrap();
        assert!((d.radius - 3.0).abs() < 1e-9);
    }
}
