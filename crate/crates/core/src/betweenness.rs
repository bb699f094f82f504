//! Shortest-path betweenness as a comparison baseline for removal criticality.
//!
//! Raw betweenness of `c` sums, over ordered pairs `(s, t)` with `s`, `t` and
//! `c` distinct, the fraction of shortest `s`-`t` paths that pass through `c`.
//! Asset kinds are ignored. Values are normalized by the largest raw value,
//! not by the combinatorial `(n-1)(n-2)` factor.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::criticality::{CriticalityBasis, CriticalityRanking, CriticalityRecord};
use crate::error::{Error, Result};
use crate::grid::{AssetId, GridGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// Follow edge direction (power flow).
    #[default]
    Directed,
    /// Treat every edge as two-way; each unordered pair is counted once.
    Undirected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetweennessReport {
    pub raw: BTreeMap<AssetId, f64>,
    /// `raw / raw[max_asset]`.
    pub normalized: BTreeMap<AssetId, f64>,
    /// Asset with the largest raw value; smallest id among ties.
    pub max_asset: AssetId,
    pub direction: Direction,
}

impl BetweennessReport {
    pub fn to_ranking(&self) -> CriticalityRanking {
        let max_raw = self.raw[&self.max_asset];
        let records = self
            .normalized
            .iter()
            .map(|(id, &n)| CriticalityRecord {
                asset: id.clone(),
                criticality: n,
                basis: CriticalityBasis::Betweenness {
                    raw: self.raw[id],
                    max_raw,
                },
            })
            .collect();
        CriticalityRanking::from_records(records)
    }
}

pub fn betweenness(g: &GridGraph) -> Result<BetweennessReport> {
    betweenness_with(g, Direction::Directed)
}

/// Brandes accumulation from every asset in index order.
pub fn betweenness_with(g: &GridGraph, direction: Direction) -> Result<BetweennessReport> {
    let raw = raw_betweenness(g, direction)?;
    let raw: BTreeMap<AssetId, f64> = g
        .assets()
        .iter()
        .zip(raw)
        .map(|(a, b)| (a.id.clone(), b))
        .collect();
    let mut max: Option<(&AssetId, f64)> = None;
    for (id, &b) in &raw {
        if max.is_none_or(|(_, m)| b > m) {
            max = Some((id, b));
        }
    }
    let (max_asset, max_raw) = match max {
        Some((id, m)) if m > 0.0 => (id.clone(), m),
        _ => return Err(Error::AllZeroBetweenness { raw }),
    };
    let normalized = raw
        .iter()
        .map(|(id, &b)| (id.clone(), b / max_raw))
        .collect();
    Ok(BetweennessReport {
        raw,
        normalized,
        max_asset,
        direction,
    })
}

fn neighbours(g: &GridGraph, direction: Direction) -> Vec<Vec<usize>> {
    (0..g.len())
        .map(|u| match direction {
            Direction::Directed => g.successors(u).to_vec(),
            Direction::Undirected => {
                let set: BTreeSet<usize> = g
                    .successors(u)
                    .iter()
                    .chain(g.predecessors(u))
                    .copied()
                    .collect();
                set.into_iter().collect()
            }
        })
        .collect()
}

fn raw_betweenness(g: &GridGraph, direction: Direction) -> Result<Vec<f64>> {
    let n = g.len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let adj = neighbours(g, direction);
    let mut centrality = vec![0.0f64; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    for s in 0..n {
        for v in 0..n {
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
            preds[v].clear();
        }
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = order.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    if direction == Direction::Undirected {
        for c in &mut centrality {
            *c /= 2.0;
        }
    }
    Ok(centrality)
}

/// Assets ranked by normalized directed betweenness.
pub fn betweenness_criticality(g: &GridGraph) -> Result<CriticalityRanking> {
    betweenness(g).map(|b| b.to_ranking())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivergentAsset {
    pub asset: AssetId,
    /// 1-based positions in the two rankings.
    pub rank_a: usize,
    pub rank_b: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub k: usize,
    pub top_a: Vec<(AssetId, f64)>,
    pub top_b: Vec<(AssetId, f64)>,
    /// Assets present in both top-k lists.
    pub top_k_overlap: usize,
    /// Spearman correlation of the criticality values (average ranks for
    /// ties). `None` when either side is constant or has fewer than two assets.
    pub spearman_rho: Option<f64>,
    pub divergence_threshold: usize,
    /// Assets whose positions differ by more than the threshold, largest gap first.
    pub divergent_assets: Vec<DivergentAsset>,
}

/// Compares two rankings over the same assets, flagging rank gaps above `k`.
pub fn compare_rankings(
    a: &CriticalityRanking,
    b: &CriticalityRanking,
    k: usize,
) -> Result<ComparisonReport> {
    compare_rankings_with(a, b, k, k)
}

pub fn compare_rankings_with(
    a: &CriticalityRanking,
    b: &CriticalityRanking,
    k: usize,
    divergence_threshold: usize,
) -> Result<ComparisonReport> {
    let assets_a: BTreeSet<&AssetId> = a.records.iter().map(|r| &r.asset).collect();
    let assets_b: BTreeSet<&AssetId> = b.records.iter().map(|r| &r.asset).collect();
    if assets_a != assets_b || assets_a.len() != a.len() || assets_b.len() != b.len() {
        return Err(Error::MismatchedAssetUniverse);
    }
    let len = a.len();
    if k > len {
        return Err(Error::TopKOutOfRange { k, len });
    }
    let top = |r: &CriticalityRanking| -> Vec<(AssetId, f64)> {
        r.top(k)
            .iter()
            .map(|rec| (rec.asset.clone(), rec.criticality))
            .collect()
    };
    let top_a = top(a);
    let top_b = top(b);
    let set_a: BTreeSet<&AssetId> = top_a.iter().map(|(id, _)| id).collect();
    let top_k_overlap = top_b.iter().filter(|(id, _)| set_a.contains(id)).count();

    let pos_b: BTreeMap<&AssetId, usize> = b
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| (&r.asset, i))
        .collect();
    let mut divergent_assets: Vec<DivergentAsset> = a
        .records
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let j = pos_b[&r.asset];
            (i.abs_diff(j) > divergence_threshold).then(|| DivergentAsset {
                asset: r.asset.clone(),
                rank_a: i + 1,
                rank_b: j + 1,
            })
        })
        .collect();
    divergent_assets.sort_by(|x, y| {
        y.rank_a
            .abs_diff(y.rank_b)
            .cmp(&x.rank_a.abs_diff(x.rank_b))
            .then_with(|| x.asset.cmp(&y.asset))
    });

    // Pair values by asset id so both vectors share an order.
    let values = |r: &CriticalityRanking| -> Vec<f64> {
        let by_id: BTreeMap<&AssetId, f64> = r
            .records
            .iter()
            .map(|rec| (&rec.asset, rec.criticality))
            .collect();
        by_id.into_values().collect()
    };
    let spearman_rho = spearman(&values(a), &values(b));

    Ok(ComparisonReport {
        k,
        top_a,
        top_b,
        top_k_overlap,
        spearman_rho,
        divergence_threshold,
        divergent_assets,
    })
}

/// Average ranks, 1-based, highest value first.
fn fractional_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

fn spearman(a: &[f64], b: &[f64]) -> Option<f64> {
    let n = a.len();
    if n < 2 {
        return None;
    }
    let (ra, rb) = (fractional_ranks(a), fractional_ranks(b));
    let mean = (n as f64 + 1.0) / 2.0;
    let (mut cov, mut var_a, mut var_b) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        let (dx, dy) = (x - mean, y - mean);
        cov += dx * dy;
        var_a += dx * dx;
        var_b += dy * dy;
    }
    if var_a == 0.0 || var_b == 0.0 {
        return None;
    }
    Some((cov / libm::sqrt(var_a * var_b)).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_graph, Asset};
    use alloc::format;
    use alloc::string::String;

    fn chain(n: usize) -> GridGraph {
        let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let assets = ids
            .iter()
            .map(|id| Asset::intermediate(id.as_str()))
            .collect();
        let edges: Vec<(String, String)> = ids
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        build_graph(assets, edges).unwrap()
    }

    #[test]
    fn three_chain() {
        let g = build_graph(
            vec![
                Asset::source("a"),
                Asset::intermediate("b"),
                Asset::load_point("c"),
            ],
            [("a", "b"), ("b", "c")],
        )
        .unwrap();
        let b = betweenness(&g).unwrap();
        assert_eq!(b.raw["b"], 1.0);
        assert_eq!(b.raw["a"], 0.0);
        assert_eq!(b.raw["c"], 0.0);
        assert_eq!(b.normalized["b"], 1.0);
        assert_eq!(b.max_asset.as_str(), "b");

        let ranking = betweenness_criticality(&g).unwrap();
        let got: Vec<(&str, f64)> = ranking
            .records
            .iter()
            .map(|r| (r.asset.as_str(), r.criticality))
            .collect();
        assert_eq!(got, vec![("b", 1.0), ("a", 0.0), ("c", 0.0)]);
    }

    #[test]
    fn four_chain_ties() {
        let g = chain(4);
        let b = betweenness(&g).unwrap();
        assert_eq!(b.raw["v1"], 2.0);
        assert_eq!(b.raw["v2"], 2.0);
        assert_eq!(b.max_asset.as_str(), "v1");
        let ranking = b.to_ranking();
        assert_eq!(ranking.records[0].asset.as_str(), "v1");
        assert_eq!(ranking.records[1].asset.as_str(), "v2");
        assert_eq!(ranking.records[1].criticality, 1.0);
    }

    #[test]
    fn chain_closed_form() {
        for n in 3..=8 {
            let b = betweenness(&chain(n)).unwrap();
            for i in 1..=n {
                let expected = if i == 1 || i == n {
                    0
                } else {
                    (i - 1) * (n - i)
                };
                assert_eq!(b.raw[format!("v{}", i - 1).as_str()], expected as f64);
            }
        }
    }

    #[test]
    fn star_is_all_zero() {
        let g = build_graph(
            vec![
                Asset::source("s"),
                Asset::load_point("t1"),
                Asset::load_point("t2"),
                Asset::load_point("t3"),
            ],
            [("s", "t1"), ("s", "t2"), ("s", "t3")],
        )
        .unwrap();
        match betweenness(&g).unwrap_err() {
            Error::AllZeroBetweenness { raw } => {
                assert_eq!(raw.len(), 4);
                assert!(raw.values().all(|&v| v == 0.0));
            }
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(
            betweenness_criticality(&g),
            Err(Error::AllZeroBetweenness { .. })
        ));
        // undirected star: the hub carries every leaf pair
        let u = betweenness_with(&g, Direction::Undirected).unwrap();
        assert_eq!(u.raw["s"], 3.0);
    }

    #[test]
    fn empty_graph() {
        let g = build_graph(vec![], core::iter::empty::<(&str, &str)>()).unwrap();
        assert_eq!(betweenness(&g).unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn undirected_chain_matches_directed_chain() {
        // On a path graph each unordered pair has one shortest path.
        let g = chain(5);
        let d = betweenness(&g).unwrap();
        let u = betweenness_with(&g, Direction::Undirected).unwrap();
        assert_eq!(d.raw, u.raw);
    }

    #[test]
    fn split_shortest_paths() {
        // s→a→t and s→b→t: each of a, b carries half of the (s, t) pair.
        let g = build_graph(
            vec![
                Asset::source("s"),
                Asset::intermediate("a"),
                Asset::intermediate("b"),
                Asset::load_point("t"),
            ],
            [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")],
        )
        .unwrap();
        let b = betweenness(&g).unwrap();
        assert_eq!(b.raw["a"], 0.5);
        assert_eq!(b.raw["b"], 0.5);
        assert_eq!(b.normalized["a"], 1.0);
    }

    fn ranking(values: &[(&str, f64)]) -> CriticalityRanking {
        CriticalityRanking::from_records(
            values
                .iter()
                .map(|&(id, c)| CriticalityRecord {
                    asset: id.into(),
                    criticality: c,
                    basis: CriticalityBasis::Betweenness {
                        raw: c,
                        max_raw: 1.0,
                    },
                })
                .collect(),
        )
    }

    #[test]
    fn identical_and_reversed() {
        let a = ranking(&[("a", 5.0), ("b", 4.0), ("c", 3.0), ("d", 2.0), ("e", 1.0)]);
        let same = compare_rankings(&a, &a, 5).unwrap();
        assert_eq!(same.top_k_overlap, 5);
        assert!((same.spearman_rho.unwrap() - 1.0).abs() < 1e-12);
        assert!(same.divergent_assets.is_empty());

        let rev = ranking(&[("a", 1.0), ("b", 2.0), ("c", 3.0), ("d", 4.0), ("e", 5.0)]);
        let opposite = compare_rankings_with(&a, &rev, 5, 1).unwrap();
        assert_eq!(opposite.top_k_overlap, 5);
        assert!((opposite.spearman_rho.unwrap() + 1.0).abs() < 1e-12);
        let gaps: Vec<(&str, usize, usize)> = opposite
            .divergent_assets
            .iter()
            .map(|d| (d.asset.as_str(), d.rank_a, d.rank_b))
            .collect();
        assert_eq!(
            gaps,
            vec![("a", 1, 5), ("e", 5, 1), ("b", 2, 4), ("d", 4, 2)]
        );
    }

    #[test]
    fn partial_overlap_of_top_fifteen() {
        // 20 assets; b swaps two of a's top 15 for two from the tail.
        let ids: Vec<String> = (0..20).map(|i| format!("x{i:02}")).collect();
        let a_vals: Vec<(&str, f64)> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), 20.0 - i as f64))
            .collect();
        let mut b_vals = a_vals.clone();
        b_vals.swap(13, 15);
        b_vals.swap(14, 16);
        let a = ranking(&a_vals);
        // reassign values so b's order follows the swapped positions
        let b = ranking(
            &b_vals
                .iter()
                .enumerate()
                .map(|(i, &(id, _))| (id, 20.0 - i as f64))
                .collect::<Vec<_>>(),
        );
        let report = compare_rankings(&a, &b, 15).unwrap();
        let top_a: BTreeSet<&AssetId> = a.top(15).iter().map(|r| &r.asset).collect();
        let direct = b
            .top(15)
            .iter()
            .filter(|r| top_a.contains(&r.asset))
            .count();
        assert_eq!(direct, 13);
        assert_eq!(report.top_k_overlap, 13);
    }

    #[test]
    fn mismatched_and_out_of_range() {
        let a = ranking(&[("a", 1.0), ("b", 0.5)]);
        let b = ranking(&[("a", 1.0), ("c", 0.5)]);
        assert_eq!(
            compare_rankings(&a, &b, 1).unwrap_err(),
            Error::MismatchedAssetUniverse
        );
        assert_eq!(
            compare_rankings(&a, &a, 3).unwrap_err(),
            Error::TopKOutOfRange { k: 3, len: 2 }
        );
    }

    #[test]
    fn spearman_with_ties_and_constants() {
        let a = ranking(&[("a", 1.0), ("b", 0.0), ("c", 0.0)]);
        let flat = ranking(&[("a", 0.0), ("b", 0.0), ("c", 0.0)]);
        assert_eq!(compare_rankings(&a, &flat, 2).unwrap().spearman_rho, None);
        let r = compare_rankings(&a, &a, 2).unwrap().spearman_rho.unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        assert_eq!(fractional_ranks(&[1.0, 0.0, 0.0]), vec![1.0, 2.5, 2.5]);
    }
}
