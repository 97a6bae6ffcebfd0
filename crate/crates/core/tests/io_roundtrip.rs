use bsn_core::geometry::{rational, PNorm, Point};
use bsn_core::graph::test_graphs::{prism, q3};
use bsn_core::io::{
    parse_drawing, parse_graph, parse_instance, parse_network, write_drawing, write_gadget, write_graph,
    write_instance, write_network, ParsedInstance,
};
use bsn_core::reduction::{draw_orthogonal, fixtures::q3_fixture, reduce};
use bsn_core::solvers::{beaded_2conn_heuristic, Instance};
use bsn_core::Error;
use proptest::prelude::*;

fn norms() -> impl Strategy<Value = PNorm> {
    prop_oneof![
        Just(PNorm::L1),
        Just(PNorm::L2),
        Just(PNorm::Infinity),
        (1u32..=9, 1u32..=4).prop_filter_map("p ≥ 1", |(n, d)| PNorm::new(n, d).ok()),
    ]
}

fn rational_points() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((-40i64..=40, 1i64..=7, -40i64..=40, 1i64..=7), 3..=8).prop_map(|v| {
        v.into_iter()
            .map(|(a, b, c, d)| Point::new(rational(a, b), rational(c, d)))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instance_roundtrip(pts in rational_points(), k in 0usize..5, norm in norms(), deg2 in any::<bool>()) {
        let inst = Instance::from_points(&pts, k, norm).with_degree2_only(deg2);
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back, ParsedInstance::Plain(inst));
        prop_assert_eq!(write_instance(&parse_instance(&text).unwrap().instance()), text);
    }

    #[test]
    fn network_roundtrip(pts in rational_points(), k in 0usize..3) {
        let inst = Instance::from_points(&pts, k, PNorm::L2);
        let r = beaded_2conn_heuristic(&inst).unwrap();
        let text = write_network(&r.network, PNorm::L2, Some(&r));
        let (net, norm) = parse_network(&text).unwrap();
        prop_assert_eq!(norm, PNorm::L2);
        prop_assert_eq!(write_network(&net, norm, Some(&r)), text);
    }
}

#[test]
fn graph_and_drawing_roundtrip() {
    for g in [q3(), prism(4)] {
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let d = draw_orthogonal(&g).unwrap();
        assert_eq!(parse_drawing(&write_drawing(&d)).unwrap(), d);
    }
}

#[test]
fn gadget_file_is_rebuilt_and_checked() {
    let (g, d) = q3_fixture();
    let inst = reduce(&g, &d, PNorm::L1).unwrap();
    let text = write_gadget(&inst);
    let parsed = parse_instance(&text).unwrap();
    assert_eq!(parsed.gadget(), Some(&inst));

    // Moving one terminal must be caught by the rebuild comparison.
    let tampered = text.replacen("\"x\": \"", "\"x\": \"1", 1);
    assert!(parse_instance(&tampered).is_err());
}

#[test]
fn schema_errors_name_the_path() {
    let text = r#"{"version":1,"norm":"2","k":0,"terminals":[{"id":"a","x":"0"}]}"#;
    match parse_instance(text) {
        Err(Error::Schema { path, .. }) => assert!(path.starts_with("terminals[0]"), "{path}"),
        other => panic!("expected schema error, got {other:?}"),
    }
}
