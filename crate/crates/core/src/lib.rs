//! Topological robustness analysis for electric power distribution grids.
//!
//! The crate works on a directed graph of typed assets ([`GridGraph`]) and
//! provides:
//!
//! - enumeration of every simple source-to-asset path ([`paths`]),
//! - the Upstream Robustness metric built from path disjointness and path
//!   length ([`metric`]),
//! - a removal-based criticality sweep with bucketed distributions
//!   ([`criticality`]),
//! - shortest-path betweenness as a comparison baseline, plus rank
//!   comparison statistics ([`betweenness`]),
//! - a deterministic generator of radial grids with tie lines ([`synth`]).
//!
//! Everything here is `no_std` and needs only `alloc`. File formats, the CLI
//! and parallel drivers live in the `gridrobust` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod betweenness;
pub mod criticality;
pub mod error;
pub mod grid;
pub mod metric;
pub mod paths;
pub mod synth;

pub use betweenness::{
    betweenness, betweenness_criticality, betweenness_with, compare_rankings,
    compare_rankings_with, BetweennessReport, ComparisonReport, Direction, DivergentAsset,
};
pub use criticality::{
    asset_criticality, criticality_sweep, distribution_stats, Bucket, CriticalityBasis,
    CriticalityRanking, CriticalityRecord, SweepBaseline, DEFAULT_BUCKET_EDGES,
};
pub use error::{Error, Result};
pub use grid::{build_graph, Asset, AssetId, AssetKind, GridGraph};
pub use metric::{
    assess_asset, check_analysable, component_scores, inter_path_independency,
    intra_path_independency, network_robustness, path_independencies, upstream_robustness,
    AssetRobustness, PathIndependency, RobustnessReport, ScoreMap,
};
pub use paths::{
    enumerate_paths, enumerate_paths_oracle, EnumerationLimits, LimitKind, LimitPolicy, Path,
    PathSet,
};
pub use synth::{generate, SynthSpec};
