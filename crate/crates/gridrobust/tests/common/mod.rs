//! Seeded random grids and brute-force reference computations.

use std::collections::{BTreeMap, BTreeSet};

use gridrobust_core::{build_graph, Asset, AssetId, AssetKind, GridGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random DAG on `n` assets. Edges follow a hidden topological order that
/// differs from id order; one to three assets at the front of that order are
/// sources.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, density: f64) -> GridGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let sources = rng.gen_range(1..=3.min(n - 1));
    let mut assets = Vec::with_capacity(n);
    for (pos, &v) in order.iter().enumerate() {
        let kind = if pos < sources {
            AssetKind::Source
        } else if rng.gen_bool(0.5) {
            AssetKind::LoadPoint
        } else {
            AssetKind::Intermediate
        };
        assets.push(Asset::new(format!("v{v:02}"), kind));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((format!("v{:02}", order[i]), format!("v{:02}", order[j])));
            }
        }
    }
    build_graph(assets, edges).expect("random DAG is valid")
}

/// Every simple source-to-`target` path as `(source, components)`, found by
/// trying all vertex sequences that extend a source.
pub fn brute_force_paths(g: &GridGraph, target: &str) -> BTreeSet<(String, Vec<String>)> {
    fn extend(
        g: &GridGraph,
        v: usize,
        t: usize,
        seq: &mut Vec<usize>,
        out: &mut BTreeSet<(String, Vec<String>)>,
    ) {
        for w in 0..g.len() {
            if seq.contains(&w) || !g.has_edge(g.id_at(v).as_str(), g.id_at(w).as_str()) {
                continue;
            }
            if w == t {
                let comps = seq[1..].iter().map(|&c| g.id_at(c).to_string()).collect();
                out.insert((g.id_at(seq[0]).to_string(), comps));
            } else if g.kind_at(w) != AssetKind::Source {
                seq.push(w);
                extend(g, w, t, seq, out);
                seq.pop();
            }
        }
    }
    let t = g.index_of(target).expect("target exists");
    let mut out = BTreeSet::new();
    for s in 0..g.len() {
        if g.kind_at(s) == AssetKind::Source {
            extend(g, s, t, &mut vec![s], &mut out);
        }
    }
    out
}

/// Directed betweenness by definition: for every ordered pair, count
/// shortest paths through each asset as `sigma_sv * sigma_vt / sigma_st`.
pub fn naive_betweenness(g: &GridGraph) -> BTreeMap<AssetId, f64> {
    let n = g.len();
    let inf = usize::MAX;
    let mut dist = vec![vec![inf; n]; n];
    let mut sigma = vec![vec![0f64; n]; n];
    for s in 0..n {
        dist[s][s] = 0;
        sigma[s][s] = 1.0;
        // Relax level by level; each level only extends the previous one.
        for d in 0..n {
            for v in 0..n {
                if dist[s][v] != d {
                    continue;
                }
                for &w in g.successors(v) {
                    if dist[s][w] == inf {
                        dist[s][w] = d + 1;
                    }
                    if dist[s][w] == d + 1 {
                        sigma[s][w] += sigma[s][v];
                    }
                }
            }
        }
    }
    let mut raw = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || dist[s][t] == inf {
                continue;
            }
            for v in 0..n {
                if v == s || v == t || dist[s][v] == inf || dist[v][t] == inf {
                    continue;
                }
                if dist[s][v] + dist[v][t] == dist[s][t] {
                    raw[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
                }
            }
        }
    }
    (0..n).map(|i| (g.id_at(i).clone(), raw[i])).collect()
}
