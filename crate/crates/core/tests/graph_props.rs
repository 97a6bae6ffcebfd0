use bsn_core::graph::test_graphs::{k4, prism, q3};
use bsn_core::graph::{articulation_points, hamiltonian_cycles, is_biconnected, is_hamiltonian_cycle, Graph};
use bsn_core::oracle::{bitmask_biconnected, menger_biconnected, permutation_hamiltonian_count};
use proptest::prelude::*;

fn graphs() -> impl Strategy<Value = Graph> {
    (3usize..=9)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let m = pairs.len();
            (Just(n), Just(pairs), prop::collection::vec(any::<bool>(), m))
        })
        .prop_map(|(n, pairs, keep)| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
            Graph::with_size(n, &edges).unwrap()
        })
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.len()).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn biconnectivity_agrees_with_oracles(g in graphs()) {
        let fast = is_biconnected(&g);
        prop_assert_eq!(fast, bitmask_biconnected(&masks(&g)));
        prop_assert_eq!(fast, menger_biconnected(g.adjacency()));
    }

    #[test]
    fn articulation_points_disconnect(g in graphs()) {
        let cuts = articulation_points(&g);
        for v in 0..g.len() {
            let mut m = masks(&g);
            let n = m.len();
            let alive: u32 = ((1u64 << n) - 1) as u32 & !(1 << v);
            for x in m.iter_mut() {
                *x &= alive;
            }
            let mut seen = 0u32;
            if alive != 0 {
                let s = alive.trailing_zeros() as usize;
                seen = 1 << s;
                let mut frontier = seen;
                while frontier != 0 {
                    let u = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let new = m[u] & !seen;
                    seen |= new;
                    frontier |= new;
                }
            }
            let whole_connected = bsn_core::graph::is_connected(&g);
            if whole_connected {
                prop_assert_eq!(cuts.contains(&v), seen != alive);
            }
        }
    }

    #[test]
    fn hamiltonian_count_matches_permutations(g in graphs()) {
        let cycles = hamiltonian_cycles(&g, usize::MAX);
        prop_assert_eq!(cycles.len(), permutation_hamiltonian_count(&g));
        for c in &cycles {
            prop_assert!(is_hamiltonian_cycle(&g, c));
        }
    }
}

#[test]
fn known_cycle_counts() {
    assert_eq!(hamiltonian_cycles(&q3(), usize::MAX).len(), 6);
    assert_eq!(hamiltonian_cycles(&k4(), usize::MAX).len(), 3);
    assert_eq!(hamiltonian_cycles(&prism(6), usize::MAX).len(), permutation_hamiltonian_count(&prism(6)));
}
