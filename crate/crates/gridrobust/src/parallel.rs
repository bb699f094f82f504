//! Rayon drivers for the network report and the criticality sweep.
//!
//! Work is split per load point or per candidate, and results are gathered
//! back in id order before anything is summed, so output is identical to the
//! serial functions in `gridrobust_core` for any thread count. When several
//! items fail, the error of the first one in id order is returned.

use gridrobust_core::{
    assess_asset, check_analysable, enumerate_paths, AssetId, CriticalityRanking,
    EnumerationLimits, GridGraph, PathSet, RobustnessReport, SweepBaseline,
};
use rayon::prelude::*;

use crate::error::Error;

pub fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Error> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {jobs:?} worker threads: {e}")))
}

fn first_error<T, E>(results: Vec<Result<T, E>>) -> Result<Vec<T>, E> {
    results.into_iter().collect()
}

pub fn par_network_robustness(
    pool: &rayon::ThreadPool,
    g: &GridGraph,
    limits: &EnumerationLimits,
) -> Result<RobustnessReport, Error> {
    check_analysable(g)?;
    let load_points = g.load_points();
    let entries = pool.install(|| {
        load_points
            .par_iter()
            .map(|t| assess_asset(g, t.as_str(), limits))
            .collect::<Vec<_>>()
    });
    Ok(RobustnessReport::from_entries(first_error(entries)?))
}

pub fn par_path_sets(
    pool: &rayon::ThreadPool,
    g: &GridGraph,
    limits: &EnumerationLimits,
) -> Result<Vec<PathSet>, Error> {
    let load_points = g.load_points();
    let sets = pool.install(|| {
        load_points
            .par_iter()
            .map(|t| enumerate_paths(g, t.as_str(), limits))
            .collect::<Vec<_>>()
    });
    Ok(first_error(sets)?)
}

pub fn par_criticality_sweep(
    pool: &rayon::ThreadPool,
    g: &GridGraph,
    limits: &EnumerationLimits,
    candidates: Option<&[AssetId]>,
    bucket_edges: &[f64],
) -> Result<CriticalityRanking, Error> {
    check_analysable(g)?;
    let baseline = SweepBaseline::from_path_sets(g, limits, par_path_sets(pool, g, limits)?)?;
    let indices = baseline.resolve_candidates(candidates)?;
    let records = pool.install(|| {
        indices
            .par_iter()
            .map(|&ix| baseline.evaluate_index(ix))
            .collect::<Vec<_>>()
    });
    Ok(CriticalityRanking::with_edges(
        first_error(records)?,
        bucket_edges,
    )?)
}
