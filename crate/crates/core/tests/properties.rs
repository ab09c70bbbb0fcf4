//! Cross-module properties on seeded random inputs.

use std::collections::BTreeSet;

use proptest::prelude::*;
use tightpart::cycle::verify_mono_cycle;
use tightpart::generators::{complete_colours, random_colouring, random_multigraph};
use tightpart::io::{parse_hgraph, parse_mgraph, write_hgraph, write_mgraph};
use tightpart::oracle::{min_mono_partition, min_rainbow_cycle_system};
use tightpart::rainbow::{greedy_rainbow_matching, rainbow_cycle_system, verify_cycle_system, Branch, CycleSystemParams};
use tightpart::tight::{greedy_mono_cover, theorem_bound};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hgraph_text_round_trips(k in 2usize..5, extra in 0usize..4, r in 1usize..4, seed: u64) {
        let h = random_colouring(k, k + extra, r, seed).unwrap();
        let text = write_hgraph(&h);
        let back = parse_hgraph(&text).unwrap();
        prop_assert_eq!(write_hgraph(&back), text);
    }

    #[test]
    fn mgraph_text_round_trips(n in 1usize..8, r in 1usize..4, p in 0.0f64..1.0, seed: u64) {
        let g = random_multigraph(n, r, p, seed).unwrap();
        let text = write_mgraph(&g);
        let back = parse_mgraph(&text).unwrap().graph;
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn cover_pieces_are_disjoint_cycles_and_shrink_by_k_plus_one(n in 4usize..11, r in 1usize..4, eps in 0.05f64..0.9, seed: u64) {
        let h = random_colouring(3, n, r, seed).unwrap();
        let rep = greedy_mono_cover(&h, eps, 200_000).unwrap();
        prop_assume!(!rep.inconclusive);
        let mut seen = BTreeSet::new();
        for c in &rep.cycles {
            prop_assert!(c.degenerate || c.order.len() > h.k());
            prop_assert!(verify_mono_cycle(&h, &c.as_cycle(), c.colour).ok);
            for &v in &c.order {
                prop_assert!(seen.insert(v));
            }
        }
        for &v in &rep.leftover {
            prop_assert!(seen.insert(v));
        }
        prop_assert_eq!(seen.len(), n);
        prop_assert_eq!(rep.steps.len(), rep.cycles.len());
    }

    #[test]
    fn oracle_below_trivial_and_greedy(n in 3usize..8, r in 1usize..4, seed: u64) {
        let h = random_colouring(3, n, r, seed).unwrap();
        let opt = min_mono_partition(&h, None).unwrap().minimum.unwrap();
        prop_assert!(opt <= n.div_ceil(3));
        let rep = greedy_mono_cover(&h, 0.01, 200_000).unwrap();
        prop_assert!(opt <= rep.partition_size(3));
    }

    #[test]
    fn rainbow_matching_when_degrees_allow(n in 2usize..14, r in 1usize..4, p in 0.4f64..1.0, seed: u64) {
        let g = random_multigraph(n, r, p, seed).unwrap();
        let phi = g.colours();
        let delta = g.degree_profile().delta_mon.unwrap_or(0);
        prop_assume!(!phi.is_empty() && delta + 1 >= 2 * phi.len());
        let m = greedy_rainbow_matching(&g).unwrap();
        let sys = tightpart::rainbow::CycleSystem { cycles: vec![], degenerate_edges: m };
        prop_assert_eq!(verify_cycle_system(&g, &sys, &phi), Ok(()));
        if n <= 8 {
            let opt = min_rainbow_cycle_system(&g).unwrap().minimum.unwrap();
            prop_assert!(opt <= sys.len());
        }
    }
}

#[test]
fn theorem_bound_strictly_increasing() {
    for k in 3..=6 {
        for r in 1..=4 {
            let b = theorem_bound(k, r).unwrap().value;
            assert!(b < theorem_bound(k, r + 1).unwrap().value, "r step at k = {k}, r = {r}");
            assert!(b < theorem_bound(k + 1, r).unwrap().value, "k step at k = {k}, r = {r}");
        }
    }
}

#[test]
fn few_colours_short_circuit_to_a_matching() {
    // n = 800, δ₀ = 1/8: 3 colours sit far below 2¹⁸δ₀⁻⁵
    let g = complete_colours(800, 3).unwrap();
    let rep = rainbow_cycle_system(&g, &CycleSystemParams::auto(0.125)).unwrap();
    assert_eq!(rep.branch, Branch::Matching);
    assert!(rep.hypotheses.iter().all(|h| h.holds));
    let sys = rep.system.unwrap();
    assert_eq!(sys.degenerate_edges.len(), 3);
    assert!(sys.cycles.is_empty());
    verify_cycle_system(&g, &sys, &g.colours()).unwrap();
}

#[test]
fn too_many_colours_for_delta0_is_refused() {
    let g = complete_colours(200, 3).unwrap();
    assert!(matches!(rainbow_cycle_system(&g, &CycleSystemParams::auto(0.125)), Err(tightpart::Error::Input(_))));
}
