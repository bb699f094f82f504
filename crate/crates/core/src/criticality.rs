//! Removal-based asset criticality.
//!
//! The criticality of an asset is the relative drop of network robustness
//! when that asset is deleted from the grid:
//! `(baseline - weakened) / baseline`. The weakened network is averaged over
//! its own load points, so removing a load point excludes it from the mean
//! instead of counting it as a zero. A weakened grid with no load point or no
//! source left has robustness 0.
//!
//! Criticality is not clamped. Removing an asset can make the remaining paths
//! more disjoint and therefore *raise* robustness, giving a negative value.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::grid::{AssetId, AssetKind, GridGraph};
use crate::metric::{check_analysable, network_robustness, upstream_robustness};
use crate::paths::{enumerate_paths, EnumerationLimits, PathSet};

/// Bucket edges in percent used when none are given.
pub const DEFAULT_BUCKET_EDGES: [f64; 4] = [1.0, 10.0, 20.0, 25.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalityBasis {
    Removal {
        baseline_network: f64,
        weakened_network: f64,
        baseline_load_points: usize,
        weakened_load_points: usize,
    },
    /// Normalized betweenness, `raw / max_raw`.
    Betweenness { raw: f64, max_raw: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalityRecord {
    pub asset: AssetId,
    pub criticality: f64,
    pub basis: CriticalityBasis,
}

impl CriticalityRecord {
    fn removal(
        asset: AssetId,
        baseline: f64,
        baseline_load_points: usize,
        weakened: f64,
        weakened_load_points: usize,
    ) -> Self {
        CriticalityRecord {
            asset,
            criticality: (baseline - weakened) / baseline,
            basis: CriticalityBasis::Removal {
                baseline_network: baseline,
                weakened_network: weakened,
                baseline_load_points,
                weakened_load_points,
            },
        }
    }

    pub fn baseline_network(&self) -> Option<f64> {
        match self.basis {
            CriticalityBasis::Removal {
                baseline_network, ..
            } => Some(baseline_network),
            CriticalityBasis::Betweenness { .. } => None,
        }
    }

    pub fn weakened_network(&self) -> Option<f64> {
        match self.basis {
            CriticalityBasis::Removal {
                weakened_network, ..
            } => Some(weakened_network),
            CriticalityBasis::Betweenness { .. } => None,
        }
    }
}

/// One row of a criticality histogram. Bounds are percentages; `None` is
/// unbounded. Lower bounds are inclusive, upper bounds exclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bucket {
    pub lower_pct: Option<f64>,
    pub upper_pct: Option<f64>,
    pub count: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalityRanking {
    /// Descending by criticality, ties by asset id.
    pub records: Vec<CriticalityRecord>,
    pub buckets: Vec<Bucket>,
}

fn ranking_order(a: &CriticalityRecord, b: &CriticalityRecord) -> Ordering {
    b.criticality
        .total_cmp(&a.criticality)
        .then_with(|| a.asset.cmp(&b.asset))
}

impl CriticalityRanking {
    /// Sorts `records` and buckets them with [`DEFAULT_BUCKET_EDGES`].
    pub fn from_records(records: Vec<CriticalityRecord>) -> Self {
        Self::with_edges(records, &DEFAULT_BUCKET_EDGES).expect("default edges are valid")
    }

    pub fn with_edges(mut records: Vec<CriticalityRecord>, edges_pct: &[f64]) -> Result<Self> {
        records.sort_by(ranking_order);
        let buckets = bucketize(&records, edges_pct)?;
        Ok(CriticalityRanking { records, buckets })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn top(&self, k: usize) -> &[CriticalityRecord] {
        &self.records[..k.min(self.records.len())]
    }

    /// 1-based rank of `id`.
    pub fn rank_of(&self, id: &str) -> Option<usize> {
        self.records
            .iter()
            .position(|r| r.asset.as_str() == id)
            .map(|p| p + 1)
    }

    pub fn get(&self, id: &str) -> Option<&CriticalityRecord> {
        self.records.iter().find(|r| r.asset.as_str() == id)
    }
}

/// Recomputes the bucket table of `ranking` for other edges.
pub fn distribution_stats(ranking: &CriticalityRanking, edges_pct: &[f64]) -> Result<Vec<Bucket>> {
    bucketize(&ranking.records, edges_pct)
}

fn bucketize(records: &[CriticalityRecord], edges_pct: &[f64]) -> Result<Vec<Bucket>> {
    if edges_pct.iter().any(|e| !e.is_finite()) || edges_pct.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidBucketEdges);
    }
    let mut counts = alloc::vec![0usize; edges_pct.len() + 1];
    for r in records {
        // Compare on the fraction scale so 0.2 lands exactly on the 20% edge.
        let slot = edges_pct
            .iter()
            .position(|&e| r.criticality < e / 100.0)
            .unwrap_or(edges_pct.len());
        counts[slot] += 1;
    }
    let total = records.len();
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| Bucket {
            lower_pct: i.checked_sub(1).map(|j| edges_pct[j]),
            upper_pct: edges_pct.get(i).copied(),
            count,
            fraction: if total == 0 {
                0.0
            } else {
                count as f64 / total as f64
            },
        })
        .collect())
}

/// Network robustness of a weakened grid: an empty load-point set or a
/// source-less grid counts as fully disconnected.
fn weakened_network(g: &GridGraph, limits: &EnumerationLimits) -> Result<(f64, usize)> {
    let load_points = g.load_points().len();
    if load_points == 0 || g.source_count() == 0 {
        return Ok((0.0, load_points));
    }
    network_robustness(g, limits).map(|r| (r.network, r.load_point_count))
}

/// Criticality of `asset` by full recomputation on the weakened grid.
pub fn asset_criticality(
    g: &GridGraph,
    asset: &str,
    limits: &EnumerationLimits,
) -> Result<CriticalityRecord> {
    let id = g
        .asset(asset)
        .map(|a| a.id.clone())
        .ok_or_else(|| Error::UnknownAsset(AssetId::new(asset)))?;
    let baseline = network_robustness(g, limits)?;
    if baseline.network <= 0.0 {
        return Err(Error::ZeroBaselineRobustness);
    }
    let weakened = g.remove_asset(asset)?;
    let (value, n) = weakened_network(&weakened, limits)?;
    Ok(CriticalityRecord::removal(
        id,
        baseline.network,
        baseline.load_point_count,
        value,
        n,
    ))
}

/// Baseline state shared by every candidate of a criticality sweep.
///
/// Holds the path set of each load point and, per asset, the load points
/// whose paths touch it. Evaluating a candidate only rescores those load
/// points; every other value is reused. The weakened mean is still summed
/// over all remaining load points in id order, so results are bit-identical
/// to [`asset_criticality`] on untruncated path sets.
///
/// `SweepBaseline` is `Sync`; candidates can be evaluated in parallel.
#[derive(Debug)]
pub struct SweepBaseline<'g> {
    graph: &'g GridGraph,
    limits: EnumerationLimits,
    /// Graph index of each load point, in id order.
    load_points: Vec<usize>,
    path_sets: Vec<PathSet>,
    values: Vec<f64>,
    /// Asset index to sorted positions in `load_points` whose path set involves it.
    touching: Vec<Vec<usize>>,
    network: f64,
}

impl<'g> SweepBaseline<'g> {
    pub fn new(graph: &'g GridGraph, limits: &EnumerationLimits) -> Result<Self> {
        check_analysable(graph)?;
        let load_points: Vec<usize> = (0..graph.len())
            .filter(|&i| graph.kind_at(i) == AssetKind::LoadPoint)
            .collect();
        let path_sets = load_points
            .iter()
            .map(|&t| enumerate_paths(graph, graph.id_at(t).as_str(), limits))
            .collect::<Result<Vec<_>>>()?;
        Self::from_path_sets(graph, limits, path_sets)
    }

    /// Builds the baseline from path sets computed elsewhere, one per load
    /// point in id order.
    pub fn from_path_sets(
        graph: &'g GridGraph,
        limits: &EnumerationLimits,
        path_sets: Vec<PathSet>,
    ) -> Result<Self> {
        check_analysable(graph)?;
        let load_points: Vec<usize> = (0..graph.len())
            .filter(|&i| graph.kind_at(i) == AssetKind::LoadPoint)
            .collect();
        assert_eq!(
            load_points.len(),
            path_sets.len(),
            "one path set per load point"
        );
        let mut touching = alloc::vec![Vec::new(); graph.len()];
        for (pos, (ps, &t)) in path_sets.iter().zip(&load_points).enumerate() {
            assert_eq!(ps.target(), graph.id_at(t), "path sets in load-point order");
            let mut involved = BTreeSet::new();
            for p in ps.paths() {
                involved.insert(&p.source);
            }
            involved.extend(ps.universe().keys());
            for id in involved {
                let ix = graph
                    .index_of(id.as_str())
                    .expect("path assets exist in graph");
                touching[ix].push(pos);
            }
        }
        let values: Vec<f64> = path_sets.iter().map(upstream_robustness).collect();
        let network = values.iter().sum::<f64>() / values.len() as f64;
        if network <= 0.0 {
            return Err(Error::ZeroBaselineRobustness);
        }
        Ok(SweepBaseline {
            graph,
            limits: *limits,
            load_points,
            path_sets,
            values,
            touching,
            network,
        })
    }

    pub fn graph(&self) -> &'g GridGraph {
        self.graph
    }

    pub fn network(&self) -> f64 {
        self.network
    }

    pub fn load_point_count(&self) -> usize {
        self.load_points.len()
    }

    pub fn path_sets(&self) -> &[PathSet] {
        &self.path_sets
    }

    /// Upstream robustness of each load point, in id order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn evaluate(&self, asset: &str) -> Result<CriticalityRecord> {
        let ix = self
            .graph
            .index_of(asset)
            .ok_or_else(|| Error::UnknownAsset(AssetId::new(asset)))?;
        self.evaluate_index(ix)
    }

    pub fn evaluate_index(&self, removed: usize) -> Result<CriticalityRecord> {
        let removed_id = self.graph.id_at(removed);
        let touched = &self.touching[removed];
        let mut next_touched = touched.iter().peekable();
        let mut weakened_graph: Option<GridGraph> = None;
        let mut sum = 0.0;
        let mut n = 0usize;
        for (pos, &t) in self.load_points.iter().enumerate() {
            let is_touched = next_touched.next_if_eq(&&pos).is_some();
            if t == removed {
                continue;
            }
            n += 1;
            if !is_touched {
                sum += self.values[pos];
                continue;
            }
            let ps = &self.path_sets[pos];
            let value = if ps.is_truncated() {
                // A truncated set may have hidden paths that survive the removal.
                let h = match weakened_graph {
                    Some(ref h) => h,
                    None => weakened_graph.insert(self.graph.remove_asset(removed_id.as_str())?),
                };
                if h.source_count() == 0 {
                    0.0
                } else {
                    upstream_robustness(&enumerate_paths(
                        h,
                        self.graph.id_at(t).as_str(),
                        &self.limits,
                    )?)
                }
            } else {
                upstream_robustness(&ps.without_asset(removed_id.as_str()))
            };
            sum += value;
        }
        let weakened = if n == 0 { 0.0 } else { sum / n as f64 };
        Ok(CriticalityRecord::removal(
            removed_id.clone(),
            self.network,
            self.load_points.len(),
            weakened,
            n,
        ))
    }

    /// Candidate list as graph indices: every asset, or the given ids
    /// deduplicated and in id order.
    pub fn resolve_candidates(&self, candidates: Option<&[AssetId]>) -> Result<Vec<usize>> {
        match candidates {
            None => Ok((0..self.graph.len()).collect()),
            Some(ids) => {
                let set = ids
                    .iter()
                    .map(|id| {
                        self.graph
                            .index_of(id.as_str())
                            .ok_or_else(|| Error::UnknownAsset(id.clone()))
                    })
                    .collect::<Result<BTreeSet<usize>>>()?;
                Ok(set.into_iter().collect())
            }
        }
    }
}

/// Serial criticality sweep over `candidates` (default: every asset).
pub fn criticality_sweep(
    g: &GridGraph,
    limits: &EnumerationLimits,
    candidates: Option<&[AssetId]>,
) -> Result<CriticalityRanking> {
    let baseline = SweepBaseline::new(g, limits)?;
    let records = baseline
        .resolve_candidates(candidates)?
        .into_iter()
        .map(|ix| baseline.evaluate_index(ix))
        .collect::<Result<Vec<_>>>()?;
    Ok(CriticalityRanking::from_records(records))
}
