//! Typed directed graph of grid assets.
//!
//! Edges follow the direction of power flow (source towards downstream). The
//! graph is immutable once built; "mutating" operations such as
//! [`GridGraph::remove_asset`] return a new graph.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Opaque asset identifier. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssetId(Arc<str>);

impl AssetId {
    pub fn new(id: impl AsRef<str>) -> Self {
        AssetId(Arc::from(id.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for AssetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for AssetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for AssetId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for AssetId {
    fn from(s: &str) -> Self {
        AssetId::new(s)
    }
}

impl From<String> for AssetId {
    fn from(s: String) -> Self {
        AssetId(Arc::from(s))
    }
}

impl From<&AssetId> for AssetId {
    fn from(id: &AssetId) -> Self {
        id.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AssetKind {
    /// Feeder injecting supply; origin of every path.
    Source,
    /// Asset delivering power to customers, e.g. a transformer.
    LoadPoint,
    /// Cables, switches, breakers, poles and everything else.
    Intermediate,
}

impl AssetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AssetKind::Source => "Source",
            AssetKind::LoadPoint => "LoadPoint",
            AssetKind::Intermediate => "Intermediate",
        }
    }
}

impl fmt::Display for AssetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownKind;

impl fmt::Display for UnknownKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of Source, LoadPoint, Intermediate")
    }
}

impl FromStr for AssetKind {
    type Err = UnknownKind;

    /// Case-insensitive; `load_point` and `load-point` are accepted too.
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let folded: String = s
            .chars()
            .filter(|c| *c != '_' && *c != '-')
            .flat_map(char::to_lowercase)
            .collect();
        match folded.as_str() {
            "source" => Ok(AssetKind::Source),
            "loadpoint" => Ok(AssetKind::LoadPoint),
            "intermediate" => Ok(AssetKind::Intermediate),
            _ => Err(UnknownKind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Asset {
    pub id: AssetId,
    pub kind: AssetKind,
    pub label: Option<String>,
}

impl Asset {
    pub fn new(id: impl Into<AssetId>, kind: AssetKind) -> Self {
        Asset {
            id: id.into(),
            kind,
            label: None,
        }
    }

    pub fn source(id: impl Into<AssetId>) -> Self {
        Asset::new(id, AssetKind::Source)
    }

    pub fn load_point(id: impl Into<AssetId>) -> Self {
        Asset::new(id, AssetKind::LoadPoint)
    }

    pub fn intermediate(id: impl Into<AssetId>) -> Self {
        Asset::new(id, AssetKind::Intermediate)
    }

    /// Empty labels are stored as `None`.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        let label = label.into();
        self.label = if label.is_empty() { None } else { Some(label) };
        self
    }
}

/// Validated directed graph of assets.
///
/// Assets are stored sorted by id and addressed internally by their position
/// in that order, so index order and id order coincide. Adjacency lists are
/// sorted, which makes every traversal deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridGraph {
    assets: Vec<Asset>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

/// Builds and validates a grid graph.
///
/// The result does not depend on the order of `assets` or `edges`.
pub fn build_graph<I, A, B>(assets: Vec<Asset>, edges: I) -> Result<GridGraph>
where
    I: IntoIterator<Item = (A, B)>,
    A: Into<AssetId>,
    B: Into<AssetId>,
{
    GridGraph::build(assets, edges)
}

impl GridGraph {
    pub fn build<I, A, B>(mut assets: Vec<Asset>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<AssetId>,
        B: Into<AssetId>,
    {
        if assets.iter().any(|a| a.id.as_str().is_empty()) {
            return Err(Error::EmptyAssetId);
        }
        // Stable sort keeps the later duplicate second, which is the one we report.
        assets.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = assets.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateAssetId(w[1].id.clone()));
        }

        let n = assets.len();
        let mut succ = alloc::vec![Vec::new(); n];
        let mut pred = alloc::vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (from, to) in edges {
            let (from, to): (AssetId, AssetId) = (from.into(), to.into());
            if from == to {
                return Err(Error::SelfLoop(from));
            }
            let lookup = |id: &AssetId| assets.binary_search_by(|a| a.id.cmp(id)).ok();
            let (Some(u), Some(v)) = (lookup(&from), lookup(&to)) else {
                return Err(Error::DanglingEdgeEndpoint { from, to });
            };
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge { from, to });
            }
            succ[u].push(v);
            pred[v].push(u);
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
        }
        Ok(GridGraph { assets, succ, pred })
    }

    pub fn len(&self) -> usize {
        self.assets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assets.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Assets in id order.
    pub fn assets(&self) -> &[Asset] {
        &self.assets
    }

    pub fn asset(&self, id: &str) -> Option<&Asset> {
        self.index_of(id).map(|i| &self.assets[i])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index_of(id).is_some()
    }

    /// Position of `id` in the id-sorted asset list.
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.assets.binary_search_by(|a| a.id.as_str().cmp(id)).ok()
    }

    pub fn asset_at(&self, index: usize) -> &Asset {
        &self.assets[index]
    }

    pub fn id_at(&self, index: usize) -> &AssetId {
        &self.assets[index].id
    }

    pub fn kind_at(&self, index: usize) -> AssetKind {
        self.assets[index].kind
    }

    pub fn successors(&self, index: usize) -> &[usize] {
        &self.succ[index]
    }

    pub fn predecessors(&self, index: usize) -> &[usize] {
        &self.pred[index]
    }

    /// Directed edges sorted by `(from, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (&AssetId, &AssetId)> + '_ {
        self.succ.iter().enumerate().flat_map(move |(u, vs)| {
            vs.iter()
                .map(move |&v| (&self.assets[u].id, &self.assets[v].id))
        })
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(u), Some(v)) => self.succ[u].binary_search(&v).is_ok(),
            _ => false,
        }
    }

    pub fn sources(&self) -> impl Iterator<Item = &AssetId> + '_ {
        self.of_kind(AssetKind::Source)
    }

    pub fn source_count(&self) -> usize {
        self.sources().count()
    }

    /// Load points in lexicographic id order.
    pub fn load_points(&self) -> Vec<AssetId> {
        self.of_kind(AssetKind::LoadPoint).cloned().collect()
    }

    fn of_kind(&self, kind: AssetKind) -> impl Iterator<Item = &AssetId> + '_ {
        self.assets
            .iter()
            .filter(move |a| a.kind == kind)
            .map(|a| &a.id)
    }

    /// Returns a copy of the graph without `id` and without any edge touching it.
    pub fn remove_asset(&self, id: &str) -> Result<GridGraph> {
        let removed = self
            .index_of(id)
            .ok_or_else(|| Error::UnknownAsset(AssetId::new(id)))?;
        let shift = |i: usize| if i > removed { i - 1 } else { i };
        let remap = |list: &Vec<usize>| -> Vec<usize> {
            list.iter()
                .filter(|&&j| j != removed)
                .map(|&j| shift(j))
                .collect()
        };
        let mut assets = Vec::with_capacity(self.assets.len() - 1);
        let mut succ = Vec::with_capacity(self.assets.len() - 1);
        let mut pred = Vec::with_capacity(self.assets.len() - 1);
        for (i, asset) in self.assets.iter().enumerate() {
            if i == removed {
                continue;
            }
            assets.push(asset.clone());
            succ.push(remap(&self.succ[i]));
            pred.push(remap(&self.pred[i]));
        }
        Ok(GridGraph { assets, succ, pred })
    }
}
