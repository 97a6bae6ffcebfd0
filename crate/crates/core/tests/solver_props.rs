use bsn_core::geometry::{PNorm, Point};
use bsn_core::oracle::brute_force_2conn_key;
use bsn_core::solvers::{
    beaded_2conn_heuristic, beaded_mst_heuristic, bottleneck_of, threshold_2conn, verify_solution, Instance,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn norms() -> impl Strategy<Value = PNorm> {
    prop_oneof![Just(PNorm::L1), Just(PNorm::L2), Just(PNorm::Infinity)]
}

fn coords(lo: usize, hi: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..=12, 0i64..=12), lo..=hi)
}

fn instance(c: &[(i64, i64)], k: usize, norm: PNorm) -> Instance {
    let pts: Vec<Point> = c.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
    Instance::from_points(&pts, k, norm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn threshold_matches_exhaustive_search(c in coords(3, 6), norm in norms()) {
        let inst = instance(&c, 0, norm);
        let (len, net) = threshold_2conn(&inst.terminals, norm).unwrap();
        prop_assert!(verify_solution(&net, &inst, true).ok);
        let ints: Vec<[i64; 2]> = c.iter().map(|&(x, y)| [x, y]).collect();
        let want = brute_force_2conn_key(&ints, norm).unwrap();
        let got = len.key().expect("exact norm");
        prop_assert_eq!(got.numer().clone(), BigInt::from(want) * got.denom());
    }

    #[test]
    fn beaded_networks_verify(c in coords(3, 7), k in 0usize..4, norm in norms()) {
        let inst = instance(&c, k, norm);
        let tree = beaded_mst_heuristic(&inst).unwrap();
        prop_assert!(verify_solution(&tree.network, &inst, false).ok);
        prop_assert!(tree.network.steiner_count() <= k);
        let two = beaded_2conn_heuristic(&inst).unwrap();
        prop_assert!(verify_solution(&two.network, &inst, true).ok);
        prop_assert!(two.network.steiner_count() <= k);
        prop_assert!(bottleneck_of(&two.network, norm).unwrap().compare(&two.bottleneck).is_eq());
    }

    #[test]
    fn beads_never_hurt(c in coords(3, 6), norm in norms()) {
        let plain = beaded_2conn_heuristic(&instance(&c, 0, norm)).unwrap();
        let beaded = beaded_2conn_heuristic(&instance(&c, 3, norm)).unwrap();
        prop_assert!(beaded.bottleneck.le(&plain.bottleneck));
    }
}
