//! Report emission.
//!
//! Every report has a CSV and a JSON rendering. CSV output may hold several
//! tables; they are separated by one blank line and each starts with its
//! own header row. Column sets:
//!
//! | report      | table       | columns |
//! |-------------|-------------|---------|
//! | robustness  | per asset   | `asset_id,r_ups,path_count,truncated` |
//! |             | summary     | `network_r_ups,load_points,truncated_assets` |
//! | criticality | records     | `asset_id,criticality,baseline,weakened` |
//! |             | buckets     | `bucket_lo,bucket_hi,count,fraction` |
//! | betweenness | per asset   | `asset_id,raw,normalized` |
//! | comparison  | summary     | `k,top_k_overlap,spearman_rho` |
//! |             | top k       | `rank,rups_asset,rups_criticality,betweenness_asset,betweenness_normalized` |
//! |             | divergent   | `asset_id,rank_rups,rank_betweenness` |
//! | grid        | summary     | `assets,edges,sources,load_points,intermediates` |
//!
//! Bucket bounds are percentages, open ends written as `-inf` and `inf`.
//! Bucket fractions are always written at full precision so that they sum to
//! one. JSON documents carry `schema_version` and `kind` fields.

use std::collections::BTreeMap;

use gridrobust_core::{
    AssetId, AssetKind, AssetRobustness, BetweennessReport, ComparisonReport, CriticalityBasis,
    CriticalityRanking, Direction, GridGraph, RobustnessReport,
};
use serde_json::{json, Value};

use crate::numfmt::{format_float, rounded, Precision};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// Betweenness values, with `normalized` absent when every raw value is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct BetweennessView {
    pub raw: BTreeMap<AssetId, f64>,
    pub normalized: Option<BTreeMap<AssetId, f64>>,
    pub direction: Direction,
}

impl From<&BetweennessReport> for BetweennessView {
    fn from(r: &BetweennessReport) -> Self {
        BetweennessView {
            raw: r.raw.clone(),
            normalized: Some(r.normalized.clone()),
            direction: r.direction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSummary {
    pub assets: usize,
    pub edges: usize,
    pub sources: usize,
    pub load_points: usize,
    pub intermediates: usize,
}

impl GridSummary {
    pub fn of(g: &GridGraph) -> Self {
        let count = |k| g.assets().iter().filter(|a| a.kind == k).count();
        GridSummary {
            assets: g.len(),
            edges: g.edge_count(),
            sources: count(AssetKind::Source),
            load_points: count(AssetKind::LoadPoint),
            intermediates: count(AssetKind::Intermediate),
        }
    }
}

pub enum Report<'a> {
    /// Network report plus, when given, the rows to list instead of every
    /// load point.
    Robustness {
        network: &'a RobustnessReport,
        targets: Option<&'a [AssetRobustness]>,
    },
    /// `top` limits the record rows; buckets always cover the whole ranking.
    Criticality {
        ranking: &'a CriticalityRanking,
        top: Option<usize>,
    },
    Betweenness(&'a BetweennessView),
    Comparison(&'a ComparisonReport),
    Grid(GridSummary),
}

impl Report<'_> {
    fn kind(&self) -> &'static str {
        match self {
            Report::Robustness { .. } => "robustness",
            Report::Criticality { .. } => "criticality",
            Report::Betweenness(_) => "betweenness",
            Report::Comparison(_) => "comparison",
            Report::Grid(_) => "grid",
        }
    }
}

pub fn emit_report(report: &Report<'_>, format: ReportFormat, precision: Precision) -> Vec<u8> {
    match format {
        ReportFormat::Csv => emit_csv(report, precision),
        ReportFormat::Json => {
            let mut out =
                serde_json::to_vec_pretty(&to_json(report, precision)).expect("report serializes");
            out.push(b'\n');
            out
        }
    }
}

struct Tables {
    out: Vec<u8>,
    started: bool,
}

impl Tables {
    fn table(&mut self, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) {
        if self.started {
            self.out.push(b'\n');
        }
        self.started = true;
        let mut w = csv::Writer::from_writer(&mut self.out);
        w.write_record(header).expect("in-memory write");
        for row in rows {
            w.write_record(&row).expect("in-memory write");
        }
        w.flush().expect("in-memory flush");
    }
}

fn emit_csv(report: &Report<'_>, p: Precision) -> Vec<u8> {
    let f = |x: f64| format_float(x, p);
    let mut t = Tables {
        out: Vec::new(),
        started: false,
    };
    match report {
        Report::Robustness { network, targets } => {
            t.table(
                &["asset_id", "r_ups", "path_count", "truncated"],
                robustness_rows(network, *targets).into_iter().map(|r| {
                    vec![
                        r.asset.to_string(),
                        f(r.r_ups),
                        r.path_count.to_string(),
                        r.truncated.to_string(),
                    ]
                }),
            );
            t.table(
                &["network_r_ups", "load_points", "truncated_assets"],
                [vec![
                    f(network.network),
                    network.load_point_count.to_string(),
                    network.truncated.len().to_string(),
                ]],
            );
        }
        Report::Criticality { ranking, top } => {
            let records = top.map_or(&ranking.records[..], |k| ranking.top(k));
            t.table(
                &["asset_id", "criticality", "baseline", "weakened"],
                records.iter().map(|r| {
                    vec![
                        r.asset.to_string(),
                        f(r.criticality),
                        r.baseline_network().map(f).unwrap_or_default(),
                        r.weakened_network().map(f).unwrap_or_default(),
                    ]
                }),
            );
            t.table(
                &["bucket_lo", "bucket_hi", "count", "fraction"],
                ranking.buckets.iter().map(|b| {
                    vec![
                        b.lower_pct.map(f).unwrap_or_else(|| "-inf".into()),
                        b.upper_pct.map(f).unwrap_or_else(|| "inf".into()),
                        b.count.to_string(),
                        format_float(b.fraction, Precision::Full),
                    ]
                }),
            );
        }
        Report::Betweenness(view) => {
            t.table(
                &["asset_id", "raw", "normalized"],
                betweenness_order(view).into_iter().map(|(id, raw)| {
                    let norm = view
                        .normalized
                        .as_ref()
                        .map(|n| f(n[id]))
                        .unwrap_or_default();
                    vec![id.to_string(), f(raw), norm]
                }),
            );
        }
        Report::Comparison(c) => {
            t.table(
                &["k", "top_k_overlap", "spearman_rho"],
                [vec![
                    c.k.to_string(),
                    c.top_k_overlap.to_string(),
                    c.spearman_rho.map(f).unwrap_or_default(),
                ]],
            );
            t.table(
                &[
                    "rank",
                    "rups_asset",
                    "rups_criticality",
                    "betweenness_asset",
                    "betweenness_normalized",
                ],
                c.top_a.iter().zip(&c.top_b).enumerate().map(|(i, (a, b))| {
                    vec![
                        (i + 1).to_string(),
                        a.0.to_string(),
                        f(a.1),
                        b.0.to_string(),
                        f(b.1),
                    ]
                }),
            );
            t.table(
                &["asset_id", "rank_rups", "rank_betweenness"],
                c.divergent_assets.iter().map(|d| {
                    vec![
                        d.asset.to_string(),
                        d.rank_a.to_string(),
                        d.rank_b.to_string(),
                    ]
                }),
            );
        }
        Report::Grid(s) => {
            t.table(
                &["assets", "edges", "sources", "load_points", "intermediates"],
                [vec![
                    s.assets.to_string(),
                    s.edges.to_string(),
                    s.sources.to_string(),
                    s.load_points.to_string(),
                    s.intermediates.to_string(),
                ]],
            );
        }
    }
    t.out
}

fn robustness_rows(
    network: &RobustnessReport,
    targets: Option<&[AssetRobustness]>,
) -> Vec<AssetRobustness> {
    match targets {
        Some(rows) => rows.to_vec(),
        None => network
            .per_asset
            .iter()
            .map(|(id, &r_ups)| AssetRobustness {
                asset: id.clone(),
                r_ups,
                path_count: network.path_counts.get(id).copied().unwrap_or(0),
                truncated: network.truncated.contains(id),
            })
            .collect(),
    }
}

/// Descending raw value, ties by id.
fn betweenness_order(view: &BetweennessView) -> Vec<(&AssetId, f64)> {
    let mut rows: Vec<(&AssetId, f64)> = view.raw.iter().map(|(id, &v)| (id, v)).collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    rows
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Directed => "directed",
        Direction::Undirected => "undirected",
    }
}

fn to_json(report: &Report<'_>, p: Precision) -> Value {
    let n = |x: f64| json!(rounded(x, p));
    let body = match report {
        Report::Robustness { network, targets } => {
            let assets: Vec<Value> = robustness_rows(network, *targets)
                .into_iter()
                .map(|r| {
                    json!({
                        "asset_id": r.asset.as_str(),
                        "r_ups": n(r.r_ups),
                        "path_count": r.path_count,
                        "truncated": r.truncated,
                    })
                })
                .collect();
            json!({
                "assets": assets,
                "network_r_ups": n(network.network),
                "load_points": network.load_point_count,
                "truncated_assets": network.truncated.iter().map(AssetId::as_str).collect::<Vec<_>>(),
            })
        }
        Report::Criticality { ranking, top } => {
            let records = top.map_or(&ranking.records[..], |k| ranking.top(k));
            let records: Vec<Value> = records
                .iter()
                .map(|r| match r.basis {
                    CriticalityBasis::Removal {
                        baseline_network,
                        weakened_network,
                        baseline_load_points,
                        weakened_load_points,
                    } => json!({
                        "asset_id": r.asset.as_str(),
                        "criticality": n(r.criticality),
                        "baseline": n(baseline_network),
                        "weakened": n(weakened_network),
                        "baseline_load_points": baseline_load_points,
                        "weakened_load_points": weakened_load_points,
                    }),
                    CriticalityBasis::Betweenness { raw, max_raw } => json!({
                        "asset_id": r.asset.as_str(),
                        "criticality": n(r.criticality),
                        "raw": n(raw),
                        "max_raw": n(max_raw),
                    }),
                })
                .collect();
            let buckets: Vec<Value> = ranking
                .buckets
                .iter()
                .map(|b| {
                    json!({
                        "bucket_lo": b.lower_pct.map(|x| rounded(x, p)),
                        "bucket_hi": b.upper_pct.map(|x| rounded(x, p)),
                        "count": b.count,
                        "fraction": b.fraction,
                    })
                })
                .collect();
            json!({
                "asset_count": ranking.len(),
                "records": records,
                "buckets": buckets,
            })
        }
        Report::Betweenness(view) => {
            let assets: Vec<Value> = betweenness_order(view)
                .into_iter()
                .map(|(id, raw)| {
                    json!({
                        "asset_id": id.as_str(),
                        "raw": n(raw),
                        "normalized": view.normalized.as_ref().map(|m| rounded(m[id], p)),
                    })
                })
                .collect();
            json!({
                "direction": direction_name(view.direction),
                "normalized_available": view.normalized.is_some(),
                "assets": assets,
            })
        }
        Report::Comparison(c) => {
            let side = |rows: &[(AssetId, f64)]| -> Vec<Value> {
                rows.iter()
                    .map(|(id, v)| json!({"asset_id": id.as_str(), "value": n(*v)}))
                    .collect()
            };
            let divergent: Vec<Value> = c
                .divergent_assets
                .iter()
                .map(|d| {
                    json!({
                        "asset_id": d.asset.as_str(),
                        "rank_rups": d.rank_a,
                        "rank_betweenness": d.rank_b,
                    })
                })
                .collect();
            json!({
                "k": c.k,
                "top_k_overlap": c.top_k_overlap,
                "spearman_rho": c.spearman_rho.map(|x| rounded(x, p)),
                "divergence_threshold": c.divergence_threshold,
                "top_rups": side(&c.top_a),
                "top_betweenness": side(&c.top_b),
                "divergent_assets": divergent,
            })
        }
        Report::Grid(s) => json!({
            "assets": s.assets,
            "edges": s.edges,
            "sources": s.sources,
            "load_points": s.load_points,
            "intermediates": s.intermediates,
        }),
    };
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), json!(REPORT_SCHEMA_VERSION));
    doc.insert("kind".into(), json!(report.kind()));
    if let Value::Object(fields) = body {
        doc.extend(fields);
    }
    Value::Object(doc)
}
