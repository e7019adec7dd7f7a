//! Property tests: algebraic laws of the fuzzy operations, oracle
//! equivalences against independent brute-force implementations, and the
//! dominance relation between the forward recursion and the
//! configuration-enumeration oracle.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fuzzy_cpa_core::diagnostics::{compare_cp_sets, explain_discrepancies};
use fuzzy_cpa_core::forward::{fuzzy_forward_recursion, fuzzy_forward_with_provenance};
use fuzzy_cpa_core::fuzzy::{Belief, DiscreteFuzzyQuantity, Duration};
use fuzzy_cpa_core::network::ProjectNetwork;
use fuzzy_cpa_core::oracle::{enumerate_configurations, oracle_cp_set, sample_cp_set};
use fuzzy_cpa_core::randgen::{random_network, GenParams, NetworkShape};

const CAP: u128 = 10_000_000;

fn belief_strategy() -> impl Strategy<Value = Belief> {
    (1u32..=1000).prop_map(|m| Belief::from_millis(m).unwrap())
}

fn quantity_strategy() -> impl Strategy<Value = DiscreteFuzzyQuantity> {
    (
        proptest::collection::btree_set(0u64..=12, 1..=5),
        proptest::collection::vec(belief_strategy(), 5),
        0usize..5,
    )
        .prop_map(|(values, beliefs, normal_seed)| {
            let normal_at = normal_seed % values.len();
            let points = values
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    let b = if i == normal_at { Belief::ONE } else { beliefs[i] };
                    (Duration::from_raw(v), b)
                })
                .collect();
            DiscreteFuzzyQuantity::new(points).unwrap()
        })
}

/// Direct double loop over all support pairs, independent of the
/// implementation's merge path.
fn brute_combine(
    a: &DiscreteFuzzyQuantity,
    b: &DiscreteFuzzyQuantity,
    op: impl Fn(u64, u64) -> u64,
) -> Vec<(Duration, Belief)> {
    let mut agg: BTreeMap<u64, Belief> = BTreeMap::new();
    for &(x, bx) in a.points() {
        for &(y, by) in b.points() {
            let z = op(x.raw(), y.raw());
            let m = bx.min(by);
            let cur = agg.entry(z).or_insert(m);
            if m > *cur {
                *cur = m;
            }
        }
    }
    agg.into_iter().map(|(v, b)| (Duration::from_raw(v), b)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn add_and_max_are_commutative(a in quantity_strategy(), b in quantity_strategy()) {
        prop_assert_eq!(a.fuzzy_add(&b), b.fuzzy_add(&a));
        prop_assert_eq!(a.fuzzy_max(&b), b.fuzzy_max(&a));
    }

    #[test]
    fn add_and_max_are_associative(
        a in quantity_strategy(),
        b in quantity_strategy(),
        c in quantity_strategy(),
    ) {
        prop_assert_eq!(a.fuzzy_add(&b).fuzzy_add(&c), a.fuzzy_add(&b.fuzzy_add(&c)));
        prop_assert_eq!(a.fuzzy_max(&b).fuzzy_max(&c), a.fuzzy_max(&b.fuzzy_max(&c)));
    }

    #[test]
    fn outputs_are_normal_and_beliefs_come_from_inputs(
        a in quantity_strategy(),
        b in quantity_strategy(),
    ) {
        for out in [a.fuzzy_add(&b), a.fuzzy_max(&b)] {
            prop_assert!(out.points().iter().any(|&(_, bl)| bl.is_one()));
            for &(_, bl) in out.points() {
                let from_inputs = a.points().iter().chain(b.points()).any(|&(_, ib)| ib == bl);
                prop_assert!(from_inputs, "belief {bl} not present in any input");
            }
        }
    }

    #[test]
    fn supports_are_pairwise_images(a in quantity_strategy(), b in quantity_strategy()) {
        let sums: Vec<u64> = {
            let mut s: Vec<u64> = a.points().iter()
                .flat_map(|&(x, _)| b.points().iter().map(move |&(y, _)| x.raw() + y.raw()))
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let got: Vec<u64> = a.fuzzy_add(&b).points().iter().map(|&(d, _)| d.raw()).collect();
        prop_assert_eq!(got, sums);

        let maxes: Vec<u64> = {
            let mut s: Vec<u64> = a.points().iter()
                .flat_map(|&(x, _)| b.points().iter().map(move |&(y, _)| x.raw().max(y.raw())))
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let got: Vec<u64> = a.fuzzy_max(&b).points().iter().map(|&(d, _)| d.raw()).collect();
        prop_assert_eq!(got, maxes);
    }

    #[test]
    fn double_loop_oracle_equivalence(a in quantity_strategy(), b in quantity_strategy()) {
        let sum = a.fuzzy_add(&b);
        prop_assert_eq!(sum.points(), &brute_combine(&a, &b, |x, y| x + y)[..]);
        let max = a.fuzzy_max(&b);
        prop_assert_eq!(max.points(), &brute_combine(&a, &b, std::cmp::max)[..]);
    }
}

fn small_dag(seed: u64) -> ProjectNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_network(&mut rng, GenParams { max_activities: 6, max_points: 3, max_value: 9, shape: NetworkShape::Dag })
}

fn chain(seed: u64) -> ProjectNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_network(&mut rng, GenParams { max_activities: 7, max_points: 3, max_value: 9, shape: NetworkShape::Chain })
}

/// Critical path length as the maximum path duration sum, independent of
/// the forward pass.
fn path_max_length(net: &ProjectNetwork, durations: &[Duration]) -> Duration {
    net.enumerate_paths(100_000)
        .unwrap()
        .iter()
        .map(|p| {
            p.iter().fold(Duration::ZERO, |acc, &i| {
                acc.checked_add(durations[i]).unwrap()
            })
        })
        .max()
        .unwrap()
}

/// Extension-principle oracle built on path enumeration instead of the
/// forward pass.
fn path_based_oracle(net: &ProjectNetwork) -> DiscreteFuzzyQuantity {
    let mut agg: BTreeMap<Duration, Belief> = BTreeMap::new();
    for config in enumerate_configurations(net, CAP).unwrap() {
        let length = path_max_length(net, &config.durations());
        let belief = config.belief();
        agg.entry(length)
            .and_modify(|b| *b = (*b).max(belief))
            .or_insert(belief);
    }
    DiscreteFuzzyQuantity::new(agg.into_iter().collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn crisp_pass_equals_path_maximum(seed in any::<u64>()) {
        let net = small_dag(seed);
        for config in enumerate_configurations(&net, CAP).unwrap().take(20) {
            let durations = config.durations();
            let sched = net.crisp_forward_pass(&durations).unwrap();
            prop_assert_eq!(sched.cp_length, path_max_length(&net, &durations));
            // ES and EF never decrease along a path
            for path in net.enumerate_paths(100_000).unwrap() {
                for pair in path.windows(2) {
                    prop_assert!(sched.es[pair[1]] >= sched.es[pair[0]]);
                    prop_assert!(sched.ef[pair[1]] >= sched.ef[pair[0]]);
                }
            }
        }
    }

    #[test]
    fn extreme_lengths_bound_all_configurations(seed in any::<u64>()) {
        let net = small_dag(seed);
        let (lo, hi) = net.extreme_lengths();
        let mut seen_lo = hi;
        let mut seen_hi = lo;
        for config in enumerate_configurations(&net, CAP).unwrap() {
            let cp = net.crisp_forward_pass(&config.durations()).unwrap().cp_length;
            seen_lo = seen_lo.min(cp);
            seen_hi = seen_hi.max(cp);
        }
        prop_assert_eq!((seen_lo, seen_hi), (lo, hi));
    }

    #[test]
    fn oracle_equals_path_based_brute_force(seed in any::<u64>()) {
        let net = small_dag(seed);
        prop_assert_eq!(oracle_cp_set(&net, CAP).unwrap(), path_based_oracle(&net));
    }

    #[test]
    fn oracle_support_endpoints_are_extreme_lengths(seed in any::<u64>()) {
        let net = small_dag(seed);
        let set = oracle_cp_set(&net, CAP).unwrap();
        prop_assert_eq!((set.min_support(), set.max_support()), net.extreme_lengths());
    }

    #[test]
    fn recursion_dominates_oracle(seed in any::<u64>()) {
        let net = small_dag(seed);
        let recursion = fuzzy_forward_recursion(&net).cp_set;
        let oracle = oracle_cp_set(&net, CAP).unwrap();
        // oracle support is contained in recursion support, and recursion
        // beliefs are at least the oracle's
        for &(d, ob) in oracle.points() {
            let rb = recursion.belief_of(d);
            prop_assert!(rb.is_some(), "oracle length {} missing from recursion", d.raw());
            prop_assert!(rb.unwrap() >= ob);
        }
        // and the comparison report never shows a negative delta
        let report = compare_cp_sets(&recursion, &oracle);
        prop_assert!(report.rows.iter().all(|r| r.delta_raw >= 0));
    }

    #[test]
    fn recursion_is_exact_on_chains(seed in any::<u64>()) {
        let net = chain(seed);
        let recursion = fuzzy_forward_recursion(&net).cp_set;
        let oracle = oracle_cp_set(&net, CAP).unwrap();
        prop_assert_eq!(&recursion, &oracle);
        prop_assert_eq!(compare_cp_sets(&recursion, &oracle).mismatches, 0);
    }

    #[test]
    fn provenance_values_match_recursion(seed in any::<u64>()) {
        let net = small_dag(seed);
        let prov = fuzzy_forward_with_provenance(&net, CAP).unwrap();
        prop_assert_eq!(prov.schedule, fuzzy_forward_recursion(&net));
    }

    #[test]
    fn discrepancies_are_explained(seed in any::<u64>()) {
        let net = small_dag(seed);
        let recursion = fuzzy_forward_recursion(&net).cp_set;
        let oracle = oracle_cp_set(&net, CAP).unwrap();
        let report = compare_cp_sets(&recursion, &oracle);
        prop_assert_eq!(report.rows.len(), {
            let mut union: Vec<u64> = recursion.points().iter()
                .chain(oracle.points()).map(|&(d, _)| d.raw()).collect();
            union.sort_unstable();
            union.dedup();
            union.len()
        });
        if report.max_delta_raw > 0 {
            let findings = explain_discrepancies(&net, CAP).unwrap();
            prop_assert!(!findings.is_empty(), "inflated beliefs but no cross-configuration finding");
        }
    }

    #[test]
    fn sampler_never_exceeds_oracle_and_is_deterministic(seed in any::<u64>()) {
        let net = small_dag(seed);
        let oracle = oracle_cp_set(&net, CAP).unwrap();
        let a = sample_cp_set(&net, seed, 1_000_000, 8, 20).unwrap();
        let b = sample_cp_set(&net, seed, 1_000_000, 8, 20).unwrap();
        prop_assert_eq!(&a.points, &b.points);
        prop_assert_eq!(&a.trace, &b.trace);
        for &(d, est) in &a.points {
            let truth = oracle.belief_of(d);
            prop_assert!(truth.is_some());
            prop_assert!(est <= truth.unwrap());
        }
    }
}

#[test]
fn chain_witnesses_are_unique_per_realizing_combination() {
    // on a chain every earliest finish point's witnesses are exactly the
    // ancestor assignments summing to its value with sufficient belief
    for seed in 0..20u64 {
        let net = chain(seed);
        let prov = fuzzy_forward_with_provenance(&net, CAP).unwrap();
        for (i, points) in prov.ef_points.iter().enumerate() {
            for p in points {
                assert!(!p.witnesses.is_empty(), "chain point without witness");
                for w in &p.witnesses {
                    let sum = w.iter().fold(Duration::ZERO, |acc, &(_, d)| acc.checked_add(d).unwrap());
                    assert_eq!(sum, p.duration, "witness sum mismatch at activity {i}");
                }
            }
        }
    }
}
