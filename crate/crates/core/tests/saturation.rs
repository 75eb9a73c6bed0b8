mod common;

use common::{layered, random_dag};
use mislab::oracle::{brute_force_max_antichain, ANTICHAIN_LIMIT};
use mislab::saturator::{
    essential_mcp_exists, hall_check, is_saturated, layer_subdigraph, saturate, Saturation,
};
use mislab::{random_gnp, SaturatorCaps};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn saturated_output_properties(n in 1usize..=14, p in 0.05f64..0.95, seed in any::<u64>()) {
        let g = random_gnp(n, p, seed).unwrap();
        let (d, _) = saturate(&layered(&g), &SaturatorCaps::default()).unwrap();
        prop_assert_eq!(d.base(), &g);
        for k in 0..d.layer_count() {
            let sub = layer_subdigraph(&d, k).unwrap();
            prop_assert_eq!(is_saturated(&sub).unwrap(), Saturation::Saturated);
        }
        let c = d.transitive_closure();
        prop_assert_eq!(hall_check(&d, &c), None);
        prop_assert!(essential_mcp_exists(&d));
        // V0 is a maximum antichain of a saturated digraph
        prop_assert_eq!(d.initiating_set().len(), brute_force_max_antichain(&c, ANTICHAIN_LIMIT).unwrap());
        let (again, trace) = saturate(&d, &SaturatorCaps::default()).unwrap();
        prop_assert_eq!(again, d);
        prop_assert_eq!(trace.cuts, 0);
    }

    #[test]
    fn saturate_from_any_orientation(n in 1usize..=12, p in 0.05f64..0.95, seed in any::<u64>()) {
        let start = random_dag(n, p, seed);
        let before = start.initiating_set().len();
        let (d, trace) = saturate(&start, &SaturatorCaps::default()).unwrap();
        prop_assert!(d.initiating_set().len() >= before);
        prop_assert!(trace.cuts == 0 || trace.restart_count >= 1);
        for k in 0..d.layer_count() {
            let sub = layer_subdigraph(&d, k).unwrap();
            prop_assert_eq!(is_saturated(&sub).unwrap(), Saturation::Saturated);
        }
    }
}
