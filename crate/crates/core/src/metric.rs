//! Upstream Robustness of individual assets and of the whole network.
//!
//! For the path set of a target `t`:
//!
//! - each component `c` scores `1 / f_c`, where `f_c` counts the paths
//!   containing `c`;
//! - a path's inter-path independency is the mean score of its components
//!   (1 for a path sharing nothing with the others);
//! - its intra-path independency is `1 / (L + 1)` for `L` components, the
//!   extra one standing for the target itself;
//! - the asset's robustness is the sum over paths of the two products.
//!
//! The network value averages asset robustness over all load points.
//! Robustness is not normalized: `m` disjoint one-hop paths give `m / 2`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::{AssetId, GridGraph};
use crate::paths::{enumerate_paths, EnumerationLimits, Path, PathSet};

/// Component scores `s_c = 1 / f_c`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreMap(BTreeMap<AssetId, f64>);

impl ScoreMap {
    pub fn get(&self, id: &str) -> Option<f64> {
        self.0.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AssetId, f64)> + '_ {
        self.0.iter().map(|(k, v)| (k, *v))
    }
}

impl FromIterator<(AssetId, f64)> for ScoreMap {
    fn from_iter<I: IntoIterator<Item = (AssetId, f64)>>(iter: I) -> Self {
        ScoreMap(iter.into_iter().collect())
    }
}

pub fn component_scores(ps: &PathSet) -> ScoreMap {
    ps.universe()
        .iter()
        .map(|(c, &f)| (c.clone(), 1.0 / f64::from(f)))
        .collect()
}

/// Mean component score along `path`; a path with no components counts as
/// fully disjoint and yields 1.
pub fn inter_path_independency(path: &Path, scores: &ScoreMap) -> Result<f64> {
    if path.components.is_empty() {
        return Ok(1.0);
    }
    let mut sum = 0.0;
    for c in &path.components {
        sum += scores
            .get(c.as_str())
            .ok_or_else(|| Error::MissingScore(c.clone()))?;
    }
    Ok(sum / path.components.len() as f64)
}

pub fn intra_path_independency(path: &Path) -> f64 {
    1.0 / (path.components.len() as f64 + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathIndependency {
    pub inter: f64,
    pub intra: f64,
}

impl PathIndependency {
    pub fn contribution(&self) -> f64 {
        self.inter * self.intra
    }
}

/// Independency pair for every path, in path-set order.
pub fn path_independencies(ps: &PathSet) -> Vec<PathIndependency> {
    let scores = component_scores(ps);
    ps.paths()
        .iter()
        .map(|p| PathIndependency {
            inter: inter_path_independency(p, &scores)
                .expect("path set universe covers all of its paths"),
            intra: intra_path_independency(p),
        })
        .collect()
}

/// Sum of path contributions; 0 for a disconnected asset.
pub fn upstream_robustness(ps: &PathSet) -> f64 {
    path_independencies(ps)
        .iter()
        .map(PathIndependency::contribution)
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssetRobustness {
    pub asset: AssetId,
    pub r_ups: f64,
    pub path_count: usize,
    pub truncated: bool,
}

impl AssetRobustness {
    pub fn from_path_set(ps: &PathSet) -> Self {
        AssetRobustness {
            asset: ps.target().clone(),
            r_ups: upstream_robustness(ps),
            path_count: ps.len(),
            truncated: ps.is_truncated(),
        }
    }
}

/// Enumerates the paths of one asset and scores them.
pub fn assess_asset(
    g: &GridGraph,
    id: &str,
    limits: &EnumerationLimits,
) -> Result<AssetRobustness> {
    enumerate_paths(g, id, limits).map(|ps| AssetRobustness::from_path_set(&ps))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessReport {
    pub per_asset: BTreeMap<AssetId, f64>,
    pub path_counts: BTreeMap<AssetId, usize>,
    /// Mean robustness over the load points.
    pub network: f64,
    pub load_point_count: usize,
    pub truncated: BTreeSet<AssetId>,
}

impl RobustnessReport {
    /// Aggregates per-load-point results. The mean is summed in load-point id
    /// order whatever order `entries` arrive in.
    pub fn from_entries(mut entries: Vec<AssetRobustness>) -> Self {
        entries.sort_by(|a, b| a.asset.cmp(&b.asset));
        let n = entries.len();
        let sum: f64 = entries.iter().map(|e| e.r_ups).sum();
        let network = if n == 0 { 0.0 } else { sum / n as f64 };
        let mut report = RobustnessReport {
            per_asset: BTreeMap::new(),
            path_counts: BTreeMap::new(),
            network,
            load_point_count: n,
            truncated: BTreeSet::new(),
        };
        for e in entries {
            if e.truncated {
                report.truncated.insert(e.asset.clone());
            }
            report.path_counts.insert(e.asset.clone(), e.path_count);
            report.per_asset.insert(e.asset, e.r_ups);
        }
        report
    }
}

/// Returns `Ok(())` when `g` can be analysed at network level.
pub fn check_analysable(g: &GridGraph) -> Result<()> {
    if g.source_count() == 0 {
        return Err(Error::NoSourceInGraph);
    }
    if g.load_points().is_empty() {
        return Err(Error::NoLoadPoints);
    }
    Ok(())
}

pub fn network_robustness(g: &GridGraph, limits: &EnumerationLimits) -> Result<RobustnessReport> {
    check_analysable(g)?;
    let entries = g
        .load_points()
        .iter()
        .map(|t| assess_asset(g, t.as_str(), limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(RobustnessReport::from_entries(entries))
}
