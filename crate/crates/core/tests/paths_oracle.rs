use std::collections::BTreeSet;

use gridrobust_core::{
    build_graph, enumerate_paths, enumerate_paths_oracle, Asset, AssetKind, EnumerationLimits,
    Error, GridGraph, LimitKind, LimitPolicy,
};
use proptest::prelude::*;

/// Arbitrary small digraph, cycles allowed. Asset `v0` is always a source.
fn arb_grid(max_nodes: usize) -> impl Strategy<Value = GridGraph> {
    (2..=max_nodes)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(0u8..4, n),
                proptest::collection::vec(proptest::bool::weighted(0.3), n * n),
            )
        })
        .prop_map(|(kinds, adj)| {
            let n = kinds.len();
            let assets = kinds
                .iter()
                .enumerate()
                .map(|(i, k)| {
                    let kind = match (i, k) {
                        (0, _) | (_, 0) => AssetKind::Source,
                        (_, 1) => AssetKind::Intermediate,
                        _ => AssetKind::LoadPoint,
                    };
                    Asset::new(format!("v{i}"), kind)
                })
                .collect();
            let edges: Vec<(String, String)> = (0..n * n)
                .filter(|&k| adj[k] && k / n != k % n)
                .map(|k| (format!("v{}", k / n), format!("v{}", k % n)))
                .collect();
            build_graph(assets, edges).unwrap()
        })
}

fn targets(g: &GridGraph) -> Vec<String> {
    g.assets()
        .iter()
        .filter(|a| a.kind != AssetKind::Source)
        .map(|a| a.id.to_string())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unlimited_enumeration_matches_oracle(g in arb_grid(9)) {
        for t in targets(&g) {
            let fast = enumerate_paths(&g, &t, &EnumerationLimits::unlimited()).unwrap();
            let slow = enumerate_paths_oracle(&g, &t).unwrap();
            prop_assert_eq!(&fast, &slow);
            prop_assert!(!fast.is_truncated());
        }
    }

    #[test]
    fn paths_are_simple_connected_and_counted(g in arb_grid(9)) {
        for t in targets(&g) {
            let ps = enumerate_paths(&g, &t, &EnumerationLimits::unlimited()).unwrap();
            let mut total_len = 0;
            for p in ps.paths() {
                prop_assert_eq!(g.asset(p.source.as_str()).unwrap().kind, AssetKind::Source);
                let mut hops = vec![p.source.as_str()];
                hops.extend(p.components.iter().map(|c| c.as_str()));
                hops.push(t.as_str());
                let distinct: BTreeSet<&str> = hops.iter().copied().collect();
                prop_assert_eq!(distinct.len(), hops.len());
                for w in hops.windows(2) {
                    prop_assert!(g.has_edge(w[0], w[1]));
                }
                for c in &p.components {
                    prop_assert_ne!(g.asset(c.as_str()).unwrap().kind, AssetKind::Source);
                }
                total_len += p.len();
            }
            let freq_sum: u32 = ps.universe().values().sum();
            prop_assert_eq!(freq_sum as usize, total_len);
            for (c, &f) in ps.universe() {
                let n = ps.paths().iter().filter(|p| p.contains(c)).count();
                prop_assert_eq!(f as usize, n);
                prop_assert!(f >= 1 && f as usize <= ps.len());
            }
        }
    }

    #[test]
    fn count_limit_truncates_to_a_prefix(g in arb_grid(8), k in 1usize..6) {
        for t in targets(&g) {
            let full = enumerate_paths(&g, &t, &EnumerationLimits::unlimited()).unwrap();
            let limits = EnumerationLimits::unlimited().with_max_paths(k);
            let cut = enumerate_paths(&g, &t, &limits.with_policy(LimitPolicy::Truncate)).unwrap();
            let expected: Vec<_> = full.paths().iter().take(k).cloned().collect();
            prop_assert_eq!(cut.paths(), &expected[..]);
            prop_assert_eq!(cut.is_truncated(), full.len() > k);
            let strict = enumerate_paths(&g, &t, &limits);
            if full.len() > k {
                let is_count_error = matches!(
                    strict,
                    Err(Error::PathLimitExceeded { limit: LimitKind::PathCount(_), .. })
                );
                prop_assert!(is_count_error);
            } else {
                prop_assert_eq!(strict.unwrap(), full);
            }
        }
    }

    #[test]
    fn length_limit_keeps_short_paths(g in arb_grid(8), max_len in 1usize..4) {
        for t in targets(&g) {
            let full = enumerate_paths(&g, &t, &EnumerationLimits::unlimited()).unwrap();
            let limits = EnumerationLimits::unlimited().with_max_path_length(max_len);
            let cut = enumerate_paths(&g, &t, &limits.with_policy(LimitPolicy::Truncate)).unwrap();
            let short: Vec<_> = full.paths().iter().filter(|p| p.len() <= max_len).cloned().collect();
            let too_long = full.paths().iter().any(|p| p.len() > max_len);
            prop_assert_eq!(cut.paths(), &short[..]);
            prop_assert_eq!(cut.is_truncated(), too_long);
            prop_assert_eq!(enumerate_paths(&g, &t, &limits).is_err(), too_long);
        }
    }

    #[test]
    fn enumeration_is_deterministic(g in arb_grid(9)) {
        for t in targets(&g) {
            let a = enumerate_paths(&g, &t, &EnumerationLimits::default()).unwrap();
            let b = enumerate_paths(&g, &t, &EnumerationLimits::default()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
