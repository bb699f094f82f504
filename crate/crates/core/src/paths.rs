//! Enumeration of simple source-to-target paths.
//!
//! A path starts at a [`Source`](crate::AssetKind::Source), ends at the
//! target, never revisits an asset and never passes *through* another source.
//! Only the assets strictly between the two endpoints are recorded as the
//! path's components, so a direct source-to-target edge is a path of length 0.
//!
//! Paths are produced in a fixed order: lexicographic by component-id
//! sequence, with the source id as tie-breaker. The enumerator generates them
//! in that order directly, so truncation under a path-count limit always
//! keeps the same prefix of the full list.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::num::NonZeroUsize;

use crate::error::{Error, Result};
use crate::grid::{AssetId, AssetKind, GridGraph};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub target: AssetId,
    pub source: AssetId,
    /// Intermediate assets in flow order, excluding both endpoints.
    pub components: Vec<AssetId>,
}

impl Path {
    /// Number of intermediate components.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, id: &AssetId) -> bool {
        self.components.contains(id)
    }

    /// Canonical ordering: component sequence first, then source.
    pub fn canonical_cmp(&self, other: &Path) -> Ordering {
        self.components
            .cmp(&other.components)
            .then_with(|| self.source.cmp(&other.source))
    }

    fn is_well_formed(&self) -> bool {
        let unique: BTreeSet<&AssetId> = self.components.iter().collect();
        unique.len() == self.components.len()
            && !unique.contains(&self.source)
            && !unique.contains(&self.target)
            && self.source != self.target
    }
}

/// All paths to one target together with per-component occurrence counts.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    target: AssetId,
    paths: Vec<Path>,
    universe: BTreeMap<AssetId, u32>,
    truncated: bool,
}

impl PathSet {
    /// Builds a path set from arbitrary paths, sorting them canonically.
    ///
    /// Returns `None` if a path is not simple, names the wrong target, or
    /// contains one of its own endpoints.
    pub fn from_paths(target: AssetId, mut paths: Vec<Path>, truncated: bool) -> Option<Self> {
        if paths
            .iter()
            .any(|p| p.target != target || !p.is_well_formed())
        {
            return None;
        }
        paths.sort_by(Path::canonical_cmp);
        Some(Self::from_sorted(target, paths, truncated))
    }

    fn from_sorted(target: AssetId, paths: Vec<Path>, truncated: bool) -> Self {
        debug_assert!(paths
            .windows(2)
            .all(|w| w[0].canonical_cmp(&w[1]) != Ordering::Greater));
        let mut universe = BTreeMap::new();
        for path in &paths {
            for c in &path.components {
                *universe.entry(c.clone()).or_insert(0u32) += 1;
            }
        }
        PathSet {
            target,
            paths,
            universe,
            truncated,
        }
    }

    pub fn target(&self) -> &AssetId {
        &self.target
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Number of paths, `m`.
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Component to frequency: how many paths contain the component.
    pub fn universe(&self) -> &BTreeMap<AssetId, u32> {
        &self.universe
    }

    pub fn frequency(&self, id: &str) -> Option<u32> {
        self.universe.get(id).copied()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// True if `id` is a component or the source endpoint of some path.
    pub fn involves(&self, id: &str) -> bool {
        self.universe.contains_key(id) || self.paths.iter().any(|p| p.source.as_str() == id)
    }

    /// The path set left after deleting `id` from the graph.
    ///
    /// Simple paths avoiding `id` are exactly the original paths that do not
    /// touch it, so for a complete (untruncated) set this equals
    /// re-enumerating on the weakened graph.
    pub fn without_asset(&self, id: &str) -> PathSet {
        let paths = self
            .paths
            .iter()
            .filter(|p| p.source.as_str() != id && !p.components.iter().any(|c| c.as_str() == id))
            .cloned()
            .collect();
        Self::from_sorted(self.target.clone(), paths, self.truncated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitPolicy {
    /// Abort with [`Error::PathLimitExceeded`].
    Fail,
    /// Keep what was found and flag the set as truncated.
    Truncate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    PathLength(usize),
    PathCount(usize),
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitKind::PathLength(n) => write!(f, "the maximum path length of {n}"),
            LimitKind::PathCount(n) => write!(f, "the maximum of {n} paths"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Maximum number of intermediate components; `None` is unlimited.
    pub max_path_length: Option<NonZeroUsize>,
    pub max_paths_per_target: Option<NonZeroUsize>,
    pub on_limit: LimitPolicy,
}

impl EnumerationLimits {
    pub const DEFAULT_MAX_PATH_LENGTH: usize = 64;
    pub const DEFAULT_MAX_PATHS: usize = 10_000;

    pub fn unlimited() -> Self {
        EnumerationLimits {
            max_path_length: None,
            max_paths_per_target: None,
            on_limit: LimitPolicy::Fail,
        }
    }

    /// Zero means unlimited.
    pub fn with_max_path_length(mut self, n: usize) -> Self {
        self.max_path_length = NonZeroUsize::new(n);
        self
    }

    /// Zero means unlimited.
    pub fn with_max_paths(mut self, n: usize) -> Self {
        self.max_paths_per_target = NonZeroUsize::new(n);
        self
    }

    pub fn with_policy(mut self, on_limit: LimitPolicy) -> Self {
        self.on_limit = on_limit;
        self
    }
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_path_length: NonZeroUsize::new(Self::DEFAULT_MAX_PATH_LENGTH),
            max_paths_per_target: NonZeroUsize::new(Self::DEFAULT_MAX_PATHS),
            on_limit: LimitPolicy::Fail,
        }
    }
}

fn resolve_target(g: &GridGraph, target: &str) -> Result<usize> {
    let t = g
        .index_of(target)
        .ok_or_else(|| Error::UnknownAsset(AssetId::new(target)))?;
    if g.kind_at(t) == AssetKind::Source {
        return Err(Error::TargetIsSource(g.id_at(t).clone()));
    }
    if g.source_count() == 0 {
        return Err(Error::NoSourceInGraph);
    }
    Ok(t)
}

/// Enumerates every simple path from any source to `target`.
pub fn enumerate_paths(g: &GridGraph, target: &str, limits: &EnumerationLimits) -> Result<PathSet> {
    let t = resolve_target(g, target)?;
    let mut walk = Enumerator::new(g, t, limits);
    walk.run()?;
    let target_id = g.id_at(t).clone();
    let paths = walk
        .found
        .into_iter()
        .map(|(s, comps)| Path {
            target: target_id.clone(),
            source: g.id_at(s).clone(),
            components: comps.into_iter().map(|c| g.id_at(c).clone()).collect(),
        })
        .collect();
    Ok(PathSet::from_sorted(target_id, paths, walk.truncated))
}

enum Flow {
    Continue,
    Stop,
}

struct Enumerator<'a> {
    g: &'a GridGraph,
    target: usize,
    limits: &'a EnumerationLimits,
    /// Non-source assets from which the target is reachable without crossing a source.
    reach: Vec<bool>,
    on_path: Vec<bool>,
    prefix: Vec<usize>,
    found: Vec<(usize, Vec<usize>)>,
    truncated: bool,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a GridGraph, target: usize, limits: &'a EnumerationLimits) -> Self {
        let n = g.len();
        let mut reach = vec![false; n];
        let mut queue = VecDeque::from([target]);
        while let Some(u) = queue.pop_front() {
            for &p in g.predecessors(u) {
                if p != target && !reach[p] && g.kind_at(p) != AssetKind::Source {
                    reach[p] = true;
                    queue.push_back(p);
                }
            }
        }
        Enumerator {
            g,
            target,
            limits,
            reach,
            on_path: vec![false; n],
            prefix: Vec::new(),
            found: Vec::new(),
            truncated: false,
        }
    }

    fn is_source(&self, i: usize) -> bool {
        self.g.kind_at(i) == AssetKind::Source
    }

    fn run(&mut self) -> Result<()> {
        let g = self.g;
        for &s in g.predecessors(self.target) {
            if self.is_source(s) {
                if let Flow::Stop = self.record(s, Vec::new())? {
                    return Ok(());
                }
            }
        }
        for v in 0..g.len() {
            if !self.reach[v] || !g.predecessors(v).iter().any(|&p| self.is_source(p)) {
                continue;
            }
            if let Flow::Stop = self.dfs_from(v)? {
                return Ok(());
            }
        }
        Ok(())
    }

    fn dfs_from(&mut self, first: usize) -> Result<Flow> {
        let g = self.g;
        let mut stack: Vec<(usize, usize)> = Vec::new();
        if let Flow::Stop = self.push(first, &mut stack)? {
            return Ok(Flow::Stop);
        }
        while let Some(top) = stack.last_mut() {
            let (v, pos) = *top;
            let succ = g.successors(v);
            if pos >= succ.len() {
                stack.pop();
                self.on_path[v] = false;
                self.prefix.pop();
                continue;
            }
            top.1 += 1;
            let w = succ[pos];
            if w == self.target || !self.reach[w] || self.on_path[w] {
                continue;
            }
            if let Some(max) = self.limits.max_path_length {
                if self.prefix.len() >= max.get() {
                    self.length_limit(w, max.get())?;
                    continue;
                }
            }
            if let Flow::Stop = self.push(w, &mut stack)? {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn push(&mut self, v: usize, stack: &mut Vec<(usize, usize)>) -> Result<Flow> {
        self.on_path[v] = true;
        self.prefix.push(v);
        stack.push((v, 0));
        if self.g.successors(v).binary_search(&self.target).is_ok() {
            let first = self.prefix[0];
            let comps = self.prefix.clone();
            for &s in self.g.predecessors(first) {
                if self.is_source(s) {
                    if let Flow::Stop = self.record(s, comps.clone())? {
                        return Ok(Flow::Stop);
                    }
                }
            }
        }
        Ok(Flow::Continue)
    }

    fn record(&mut self, source: usize, comps: Vec<usize>) -> Result<Flow> {
        if let Some(max) = self.limits.max_paths_per_target {
            if self.found.len() >= max.get() {
                return match self.limits.on_limit {
                    LimitPolicy::Fail => Err(self.limit_error(LimitKind::PathCount(max.get()))),
                    LimitPolicy::Truncate => {
                        self.truncated = true;
                        Ok(Flow::Stop)
                    }
                };
            }
        }
        self.found.push((source, comps));
        Ok(Flow::Continue)
    }

    /// Called when extending the prefix with `next` would exceed the length cap.
    /// Only counts as a limit hit if some simple path to the target actually
    /// continues through `next`.
    fn length_limit(&mut self, next: usize, max: usize) -> Result<()> {
        if self.truncated && self.limits.on_limit == LimitPolicy::Truncate {
            return Ok(());
        }
        if !self.reaches_target_avoiding_prefix(next) {
            return Ok(());
        }
        match self.limits.on_limit {
            LimitPolicy::Fail => Err(self.limit_error(LimitKind::PathLength(max))),
            LimitPolicy::Truncate => {
                self.truncated = true;
                Ok(())
            }
        }
    }

    fn reaches_target_avoiding_prefix(&self, start: usize) -> bool {
        let mut seen = self.on_path.clone();
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in self.g.successors(u) {
                if w == self.target {
                    return true;
                }
                if !seen[w] && self.reach[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }

    fn limit_error(&self, limit: LimitKind) -> Error {
        Error::PathLimitExceeded {
            target: self.g.id_at(self.target).clone(),
            limit,
        }
    }
}

/// Exhaustive recursive enumeration without limits or pruning.
///
/// Intended as a cross-check for [`enumerate_paths`] on small graphs; its
/// cost grows with every simple walk out of every source.
pub fn enumerate_paths_oracle(g: &GridGraph, target: &str) -> Result<PathSet> {
    let t = resolve_target(g, target)?;
    let target_id = g.id_at(t).clone();
    let mut paths = Vec::new();
    for (s, asset) in g.assets().iter().enumerate() {
        if asset.kind != AssetKind::Source {
            continue;
        }
        let mut visited = BTreeSet::new();
        let mut comps = Vec::new();
        walk_all(
            g,
            s,
            t,
            &mut visited,
            &mut comps,
            &mut |comps: &[usize]| {
                paths.push(Path {
                    target: target_id.clone(),
                    source: asset.id.clone(),
                    components: comps.iter().map(|&c| g.id_at(c).clone()).collect(),
                });
            },
        );
    }
    Ok(PathSet::from_paths(target_id, paths, false).expect("oracle only yields simple paths"))
}

fn walk_all(
    g: &GridGraph,
    at: usize,
    target: usize,
    visited: &mut BTreeSet<usize>,
    comps: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    for &w in g.successors(at) {
        if w == target {
            emit(comps);
        } else if g.kind_at(w) != AssetKind::Source && !visited.contains(&w) {
            visited.insert(w);
            comps.push(w);
            walk_all(g, w, target, visited, comps, emit);
            comps.pop();
            visited.remove(&w);
        }
    }
}
