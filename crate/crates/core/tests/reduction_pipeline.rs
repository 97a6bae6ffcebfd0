use bsn_core::geometry::{rational, PNorm};
use bsn_core::graph::hamiltonian_cycles;
use bsn_core::graph::test_graphs::{prism, q3};
use bsn_core::reduction::fixtures::{prism6_fixture, q3_fixture};
use bsn_core::reduction::{
    draw_orthogonal, extract_cycle, reduce, roundtrip_check, validate_source, verify_gaps, witness_network,
    Extraction,
};
use bsn_core::solvers::{bottleneck_of, threshold_2conn, verify_solution};

#[test]
fn drawer_output_reduces_and_roundtrips() {
    for g in [q3(), prism(4)] {
        let d = draw_orthogonal(&g).unwrap();
        assert!(validate_source(&g, &d).ok);
        let r = roundtrip_check(&g, &d, PNorm::L1).unwrap();
        assert!(r.ok(), "{r}");
        assert_eq!(r.cycles, hamiltonian_cycles(&g, usize::MAX).len());
    }
}

#[test]
fn prism_fixture_roundtrip_at_infinity() {
    let (g, d) = prism6_fixture();
    let r = roundtrip_check(&g, &d, PNorm::Infinity).unwrap();
    assert!(r.ok(), "{r}");
    assert!(r.cycles > 0);
}

#[test]
fn gaps_hold_for_several_norms() {
    let (g, d) = q3_fixture();
    for norm in [PNorm::L1, PNorm::new(3, 2).unwrap(), PNorm::L2, PNorm::integer(3).unwrap(), PNorm::Infinity] {
        let inst = reduce(&g, &d, norm).unwrap();
        let report = verify_gaps(&inst, &rational(1, 10));
        assert!(report.passed, "{norm}: {:?}", report.checks);
    }
}

#[test]
fn every_witness_has_unit_bottleneck_and_extracts_its_cycle() {
    let (g, d) = q3_fixture();
    let inst = reduce(&g, &d, PNorm::L2).unwrap();
    let plain = inst.instance();
    for c in hamiltonian_cycles(&g, usize::MAX) {
        let net = witness_network(&inst, &c).unwrap();
        assert!(verify_solution(&net, &plain, true).ok);
        assert!(net.steiner_count() <= inst.k);
        assert_eq!(bottleneck_of(&net, PNorm::L2).unwrap().value(), 1.0);
        match extract_cycle(&inst, &net).unwrap() {
            Extraction::Cycle(found) => {
                let mut a = found.clone();
                let mut b = c.clone();
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
            Extraction::Failure(r) => panic!("{r}"),
        }
    }
}

#[test]
fn steiner_free_network_sits_above_the_gap() {
    let (g, d) = q3_fixture();
    let inst = reduce(&g, &d, PNorm::L1).unwrap();
    let (len, net) = threshold_2conn(&inst.instance().terminals, PNorm::L1).unwrap();
    assert_eq!(len.value(), 2.0);
    match extract_cycle(&inst, &net).unwrap() {
        Extraction::Failure(r) => assert!(r.starts_with("bottleneck ≥ 2^(1/p)"), "{r}"),
        Extraction::Cycle(_) => panic!("threshold network cannot encode a cycle"),
    }
}
