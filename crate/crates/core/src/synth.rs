//! Deterministic synthetic distribution grids.
//!
//! Each source roots a complete radial tree of the given depth and branching
//! factor. Tie lines are then added between assets at equal depth that hang
//! off different parents (possibly under different sources), creating
//! alternative supply paths. Every edge, tree or tie, runs from a lower to a
//! higher asset index, so the result is acyclic.
//!
//! Asset ids are zero-padded (`s0`, `n0001`, ...) so id order equals
//! creation order. The same spec always yields the same graph.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{build_graph, Asset, AssetKind, GridGraph};

const MAX_ASSETS: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub sources: u32,
    /// Levels below each source; the source itself is depth 0.
    pub depth: u32,
    pub branching: u32,
    /// Tie lines added, as a fraction of the radial edge count.
    pub tie_fraction: f64,
    /// Fraction of non-source assets marked as load points.
    pub load_fraction: f64,
    pub seed: u64,
}

impl SynthSpec {
    /// Dimensions close to a large multi-feeder substation: 6 sources,
    /// 4686 assets, about 1300 load points.
    pub fn substation(seed: u64) -> Self {
        SynthSpec {
            sources: 6,
            depth: 4,
            branching: 5,
            tie_fraction: 0.02,
            load_fraction: 0.28,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sources == 0 {
            return Err(Error::InvalidSpec("sources must be positive"));
        }
        if self.depth == 0 {
            return Err(Error::InvalidSpec("depth must be positive"));
        }
        if self.branching == 0 {
            return Err(Error::InvalidSpec("branching must be positive"));
        }
        if !(0.0..=1.0).contains(&self.tie_fraction) {
            return Err(Error::InvalidSpec("tie_fraction must lie in [0, 1]"));
        }
        if !(self.load_fraction > 0.0 && self.load_fraction <= 1.0) {
            return Err(Error::InvalidSpec("load_fraction must lie in (0, 1]"));
        }
        match self.asset_count() {
            Some(n) if n <= MAX_ASSETS => Ok(()),
            _ => Err(Error::InvalidSpec("grid would exceed 2,000,000 assets")),
        }
    }

    /// Total number of assets the spec produces, if it fits in a `u64`.
    pub fn asset_count(&self) -> Option<u64> {
        let mut per_tree: u64 = 1;
        let mut level: u64 = 1;
        for _ in 0..self.depth {
            level = level.checked_mul(u64::from(self.branching))?;
            per_tree = per_tree.checked_add(level)?;
        }
        per_tree.checked_mul(u64::from(self.sources))
    }
}

struct Node {
    depth: u32,
    parent: Option<usize>,
}

pub fn generate(spec: &SynthSpec) -> Result<GridGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut nodes: Vec<Node> = Vec::new();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..spec.sources {
        let root = nodes.len();
        nodes.push(Node {
            depth: 0,
            parent: None,
        });
        let mut frontier = alloc::vec![root];
        for d in 1..=spec.depth {
            let mut next = Vec::with_capacity(frontier.len() * spec.branching as usize);
            for &p in &frontier {
                for _ in 0..spec.branching {
                    let child = nodes.len();
                    nodes.push(Node {
                        depth: d,
                        parent: Some(p),
                    });
                    tree_edges.push((p, child));
                    next.push(child);
                }
            }
            frontier = next;
        }
    }

    let mut levels: Vec<Vec<usize>> = alloc::vec![Vec::new(); spec.depth as usize + 1];
    for (i, n) in nodes.iter().enumerate() {
        levels[n.depth as usize].push(i);
    }

    let mut edges: BTreeSet<(usize, usize)> = tree_edges.iter().copied().collect();
    let wanted_ties = libm::round(spec.tie_fraction * tree_edges.len() as f64) as usize;
    let non_sources: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].depth > 0).collect();
    let mut added = 0usize;
    let mut attempts = 0usize;
    while added < wanted_ties && attempts < wanted_ties.saturating_mul(20) {
        attempts += 1;
        let u = non_sources[rng.gen_range(0..non_sources.len())];
        let level = &levels[nodes[u].depth as usize];
        let v = level[rng.gen_range(0..level.len())];
        if nodes[u].parent == nodes[v].parent {
            continue;
        }
        let edge = (u.min(v), u.max(v));
        if edges.insert(edge) {
            added += 1;
        }
    }

    let load_count = libm::round(spec.load_fraction * non_sources.len() as f64) as usize;
    let load_count = load_count.clamp(1, non_sources.len());
    let mut shuffled = non_sources.clone();
    shuffled.shuffle(&mut rng);
    let loads: BTreeSet<usize> = shuffled[..load_count].iter().copied().collect();

    let width = digits(nodes.len());
    let source_width = digits(spec.sources as usize);
    let mut source_no = 0usize;
    let ids: Vec<String> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            if n.depth == 0 {
                source_no += 1;
                format!("s{:0w$}", source_no - 1, w = source_width)
            } else {
                format!("n{:0w$}", i, w = width)
            }
        })
        .collect();

    let assets = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let kind = if n.depth == 0 {
                AssetKind::Source
            } else if loads.contains(&i) {
                AssetKind::LoadPoint
            } else {
                AssetKind::Intermediate
            };
            let label = if n.depth == 0 {
                String::from("feeder")
            } else {
                format!("depth {}", n.depth)
            };
            Asset::new(ids[i].as_str(), kind).with_label(label)
        })
        .collect();
    let edge_ids = edges
        .into_iter()
        .map(|(u, v)| (ids[u].as_str(), ids[v].as_str()));
    build_graph(assets, edge_ids)
}

fn digits(mut n: usize) -> usize {
    let mut d = 1;
    while n >= 10 {
        n /= 10;
        d += 1;
    }
    d
}
