use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use l0kit::dichotomy::{decide, verify_tower, Dichotomy, Schedule};
use l0kit::lc::EpBits;
use l0kit::{oracle, transfer, HomProfile, ParamPrefix, PathGadget};

fn odd_prefix(max_len: usize) -> impl Strategy<Value = ParamPrefix> {
    prop::collection::vec((0u64..4).prop_map(|v| 2 * v + 1), 0..=max_len)
        .prop_map(|v| ParamPrefix::new(v).expect("positive"))
}

proptest! {
    #[test]
    fn gadget_sizes_follow_the_recursion(prefix in odd_prefix(8)) {
        let mut vertices = 1usize;
        for (n, &c) in prefix.values().iter().enumerate() {
            vertices = 2 * vertices + c as usize + 1;
            let gadget = PathGadget::build(&prefix.truncated(n + 1));
            prop_assert_eq!(gadget.vertex_count(), vertices);
            prop_assert_eq!(gadget.edge_count(), vertices - 1);
        }
    }

    #[test]
    fn full_profile_counts_walks(seed in any::<u64>(), prefix in odd_prefix(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = oracle::random_graph(&mut rng, 5, 0.5);
        let profile = HomProfile::all_homs(&prefix, &g);
        let len = PathGadget::build(&prefix).edge_count() as u64;
        prop_assert_eq!(profile.count_exact(), transfer::walk_count::<BigUint>(&g, len));
    }

    #[test]
    fn eventually_periodic_text_round_trips(prefix in prop::collection::vec(any::<bool>(), 0..6),
                                            period in prop::collection::vec(any::<bool>(), 1..5)) {
        let x = EpBits::new(prefix, period).expect("nonempty period");
        let back: EpBits = x.to_string().parse().expect("own output parses");
        prop_assert_eq!(back, x);
    }

    #[test]
    fn dichotomy_picks_the_right_branch(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = oracle::random_graph(&mut rng, 6, 0.4);
        match decide(&g, 3, &Schedule::Default).expect("decides") {
            Dichotomy::Coloring(col) => {
                prop_assert!(oracle::is_bipartite(&g));
                prop_assert!(col.is_proper(&g));
            }
            Dichotomy::Tower(tower) => {
                prop_assert!(!oracle::is_bipartite(&g));
                let report = verify_tower(&tower, &g);
                prop_assert!(report.passed(), "{:?}", report.violations);
            }
        }
    }
}
