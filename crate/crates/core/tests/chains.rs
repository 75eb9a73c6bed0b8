mod common;

use common::random_dag;
use mislab::chain::{precedes, solve_table};
use mislab::oracle::{
    brute_force_max_antichain, closure_matching_size, enumerate_max_antichains, ANTICHAIN_LIMIT,
    ENUMERATE_LIMIT,
};
use mislab::{ChoicePolicy, FfOutcome};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn chain_count_equals_width(n in 1usize..=14, p in 0.0f64..1.0, seed in any::<u64>()) {
        let c = random_dag(n, p, seed).transitive_closure();
        let (t, outcome) = solve_table(&c, ChoicePolicy::AllComparable);
        prop_assert_eq!(outcome, FfOutcome::Maximum);
        let width = brute_force_max_antichain(&c, ANTICHAIN_LIMIT).unwrap();
        let chains = t.chains().unwrap();
        prop_assert_eq!(chains.len(), width);
        prop_assert_eq!(t.matching_size(), closure_matching_size(&c));
        let a = t.general_antichain().unwrap();
        prop_assert_eq!(a.len(), width);
        prop_assert!(c.is_antichain(a.members()));
        for chain in &chains.chains {
            for w in chain.windows(2) {
                prop_assert!(c.reaches(w[0], w[1]));
            }
        }
    }

    #[test]
    fn essential_table_is_a_path_cover(n in 1usize..=14, p in 0.0f64..1.0, seed in any::<u64>()) {
        let d = random_dag(n, p, seed);
        let c = d.transitive_closure();
        let (t, _) = solve_table(&c, ChoicePolicy::EssentialOnly);
        for (i, j) in t.chosen_cells() {
            prop_assert!(d.has_arc(i, j));
        }
        let covered: usize = t.chains().unwrap().chains.iter().map(|ch| ch.len()).sum();
        prop_assert_eq!(covered, n);
    }

    #[test]
    fn antichains_are_topmost(n in 1usize..=11, p in 0.0f64..1.0, seed in any::<u64>()) {
        let c = random_dag(n, p, seed).transitive_closure();
        let all = enumerate_max_antichains(&c, ENUMERATE_LIMIT).unwrap();
        for policy in [ChoicePolicy::AllComparable, ChoicePolicy::EssentialOnly] {
            let (t, outcome) = solve_table(&c, policy);
            if outcome == FfOutcome::ClosureDeficit {
                continue;
            }
            let general = t.general_antichain().unwrap();
            prop_assert!(all.contains(&general));
            for other in &all {
                prop_assert!(precedes(other, &general, &c));
            }
            for v in 0..n {
                let through: Vec<_> = all.iter().filter(|a| a.contains(v)).collect();
                match t.antichain_for_vertex(v).unwrap() {
                    None => prop_assert!(through.is_empty(), "vertex {} lies on a maximum antichain", v + 1),
                    Some(u) => {
                        prop_assert!(u.contains(v));
                        prop_assert!(all.contains(&u));
                        for other in through {
                            prop_assert!(precedes(other, &u, &c));
                        }
                    }
                }
            }
        }
    }
}
