use alloc::collections::BTreeMap;

use thiserror::Error;

use crate::grid::AssetId;
use crate::paths::LimitKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("asset id must not be empty")]
    EmptyAssetId,
    #[error("duplicate asset id `{0}`")]
    DuplicateAssetId(AssetId),
    #[error("edge ({from}, {to}) references an undeclared asset")]
    DanglingEdgeEndpoint { from: AssetId, to: AssetId },
    #[error("self-loop on asset `{0}`")]
    SelfLoop(AssetId),
    #[error("duplicate edge ({from}, {to})")]
    DuplicateEdge { from: AssetId, to: AssetId },
    #[error("unknown asset `{0}`")]
    UnknownAsset(AssetId),
    #[error("graph has no source asset")]
    NoSourceInGraph,
    #[error("graph has no load point")]
    NoLoadPoints,
    #[error("asset `{0}` is a source and has no upstream paths")]
    TargetIsSource(AssetId),
    #[error("path enumeration for `{target}` exceeded {limit}")]
    PathLimitExceeded { target: AssetId, limit: LimitKind },
    #[error("no score for component `{0}`")]
    MissingScore(AssetId),
    #[error("baseline network robustness is zero")]
    ZeroBaselineRobustness,
    #[error("bucket edges must be finite and strictly increasing")]
    InvalidBucketEdges,
    #[error("graph has no assets")]
    EmptyGraph,
    #[error("no asset lies inside any shortest path; betweenness cannot be normalized")]
    AllZeroBetweenness { raw: BTreeMap<AssetId, f64> },
    #[error("rankings cover different asset sets")]
    MismatchedAssetUniverse,
    #[error("top-k of {k} is out of range for rankings of {len} assets")]
    TopKOutOfRange { k: usize, len: usize },
    #[error("invalid synthetic grid spec: {0}")]
    InvalidSpec(&'static str),
}

impl Error {
    /// Short machine-readable category used by front ends.
    pub fn category(&self) -> &'static str {
        match self {
            Error::EmptyAssetId
            | Error::DuplicateAssetId(_)
            | Error::DanglingEdgeEndpoint { .. }
            | Error::SelfLoop(_)
            | Error::DuplicateEdge { .. } => "validation",
            Error::InvalidSpec(_) | Error::InvalidBucketEdges | Error::TopKOutOfRange { .. } => {
                "usage"
            }
            _ => "analysis",
        }
    }
}
