use bsn_core::geometry::{bottleneck_fst3, lemma2_bound, smallest_enclosing_disc, PNorm, Point};
use bsn_core::oracle::brute_sec_radius;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn norms() -> impl Strategy<Value = PNorm> {
    prop_oneof![Just(PNorm::L1), Just(PNorm::L2), Just(PNorm::Infinity)]
}

fn points(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-50i64..=50, -50i64..=50), 1..=max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::from_ints(x, y)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn disc_encloses_and_matches_closed_form(pts in points(7), norm in norms()) {
        let d = smallest_enclosing_disc(&pts, norm, TOL).unwrap();
        for p in &pts {
            prop_assert!(d.contains(p, norm, 1e-7));
        }
        let f: Vec<[f64; 2]> = pts.iter().map(Point::to_f64).collect();
        prop_assert!((d.radius - brute_sec_radius(&f, norm)).abs() < 1e-6);
    }

    #[test]
    fn disc_radius_is_at_least_half_the_diameter(pts in points(6), norm in norms()) {
        let d = smallest_enclosing_disc(&pts, norm, TOL).unwrap();
        let diam = pts.iter()
            .flat_map(|a| pts.iter().map(move |b| norm.dist(a, b)))
            .fold(0.0, f64::max);
        prop_assert!(d.radius >= diam / 2.0 - 1e-7);
        prop_assert!(d.radius <= diam + 1e-7);
    }

    #[test]
    fn disc_is_translation_invariant(pts in points(5), dx in -20i64..20, dy in -20i64..20, norm in norms()) {
        let moved: Vec<Point> = pts.iter()
            .map(|p| p.translate(&bsn_core::geometry::int(dx), &bsn_core::geometry::int(dy)))
            .collect();
        let a = smallest_enclosing_disc(&pts, norm, TOL).unwrap().radius;
        let b = smallest_enclosing_disc(&moved, norm, TOL).unwrap().radius;
        prop_assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn axis_triangle_never_beats_the_bound(l1 in 2i64..40, l2 in 2i64..40, p in 0usize..5) {
        let norm = [PNorm::L1, PNorm::new(3, 2).unwrap(), PNorm::L2, PNorm::integer(3).unwrap(), PNorm::Infinity][p];
        let f = bottleneck_fst3(&Point::origin(), &Point::from_ints(0, l1), &Point::from_ints(l2, 0), norm, TOL).unwrap();
        prop_assert!(f.bottleneck >= lemma2_bound(norm) - 1e-6);
    }
}

#[test]
fn right_triangle_values() {
    let tri = [Point::origin(), Point::from_ints(0, 2), Point::from_ints(2, 0)];
    for (norm, r) in [(PNorm::L1, 2.0), (PNorm::L2, 2f64.sqrt()), (PNorm::Infinity, 1.0)] {
        let d = smallest_enclosing_disc(&tri, norm, TOL).unwrap();
        assert!((d.radius - r).abs() < 1e-6, "{norm}");
        assert!((lemma2_bound(norm) - r).abs() < 1e-12, "{norm}");
    }
}
