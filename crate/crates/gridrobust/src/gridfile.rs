//! Grid files.
//!
//! Two interchangeable encodings are supported.
//!
//! **CSV** is a directory holding `nodes.csv` (`id,kind,label`, label
//! optional) and `edges.csv` (`from,to`). A header row is optional and is
//! recognised by its first field (`id` or `from`). Fields are trimmed.
//!
//! **JSON** is a single document:
//!
//! ```json
//! {"schema_version": 1,
//!  "nodes": [{"id": "s", "kind": "Source", "label": "feeder"}],
//!  "edges": [{"from": "s", "to": "t"}]}
//! ```
//!
//! Edges may also be written as two-element arrays, `["s", "t"]`.
//!
//! Validation failures are reported against the line (CSV) or array element
//! (JSON) that caused them.

use std::fs;
use std::path::Path;

use gridrobust_core::{build_graph, Asset, AssetKind, GridGraph};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Location};

pub const NODES_FILE: &str = "nodes.csv";
pub const EDGES_FILE: &str = "edges.csv";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFormat {
    Csv,
    Json,
}

/// Reads a grid from a CSV directory or a JSON file.
pub fn read_grid(path: &Path) -> Result<GridGraph, Error> {
    let meta = fs::metadata(path).map_err(|e| Error::io(path, e))?;
    if meta.is_dir() {
        let nodes_path = path.join(NODES_FILE);
        let edges_path = path.join(EDGES_FILE);
        let nodes = fs::read_to_string(&nodes_path).map_err(|e| Error::io(&nodes_path, e))?;
        let edges = fs::read_to_string(&edges_path).map_err(|e| Error::io(&edges_path, e))?;
        parse_grid_csv(
            &nodes,
            &edges,
            &nodes_path.display().to_string(),
            &edges_path.display().to_string(),
        )
    } else {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        parse_grid_json(&text, &path.display().to_string())
    }
}

/// Writes `g` as a CSV directory (created if needed) or a JSON file.
pub fn write_grid(g: &GridGraph, path: &Path, format: GridFormat) -> Result<(), Error> {
    match format {
        GridFormat::Csv => {
            fs::create_dir_all(path).map_err(|e| Error::io(path, e))?;
            let (nodes, edges) = grid_to_csv(g);
            let nodes_path = path.join(NODES_FILE);
            let edges_path = path.join(EDGES_FILE);
            fs::write(&nodes_path, nodes).map_err(|e| Error::io(&nodes_path, e))?;
            fs::write(&edges_path, edges).map_err(|e| Error::io(&edges_path, e))
        }
        GridFormat::Json => fs::write(path, grid_to_json(g)).map_err(|e| Error::io(path, e)),
    }
}

struct NodeRow {
    line: u64,
    asset: Asset,
}

struct EdgeRow {
    line: u64,
    from: String,
    to: String,
}

fn csv_records(text: &str, file: &str) -> Result<Vec<(u64, csv::StringRecord)>, Error> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            Error::Parse {
                file: file.to_string(),
                location: Location::Line(line),
                reason: e.to_string(),
            }
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, record));
    }
    Ok(out)
}

fn is_header(record: &csv::StringRecord, first: &str) -> bool {
    record.get(0).is_some_and(|f| f.eq_ignore_ascii_case(first))
}

/// Parses the two CSV tables. `nodes_name` and `edges_name` label errors.
pub fn parse_grid_csv(
    nodes: &str,
    edges: &str,
    nodes_name: &str,
    edges_name: &str,
) -> Result<GridGraph, Error> {
    let parse_err = |file: &str, line: u64, reason: String| Error::Parse {
        file: file.to_string(),
        location: Location::Line(line),
        reason,
    };

    let mut node_rows = Vec::new();
    let mut node_records = csv_records(nodes, nodes_name)?;
    if node_records
        .first()
        .is_some_and(|(_, r)| is_header(r, "id"))
    {
        node_records.remove(0);
    }
    for (line, record) in node_records {
        if !(2..=3).contains(&record.len()) {
            return Err(parse_err(
                nodes_name,
                line,
                format!(
                    "expected 2 or 3 fields (id,kind,label), found {}",
                    record.len()
                ),
            ));
        }
        let kind: AssetKind = record[1]
            .parse()
            .map_err(|e| parse_err(nodes_name, line, format!("bad kind {:?}: {e}", &record[1])))?;
        let mut asset = Asset::new(&record[0], kind);
        if let Some(label) = record.get(2) {
            asset = asset.with_label(label);
        }
        node_rows.push(NodeRow { line, asset });
    }

    let mut edge_rows = Vec::new();
    let mut edge_records = csv_records(edges, edges_name)?;
    if edge_records
        .first()
        .is_some_and(|(_, r)| is_header(r, "from"))
    {
        edge_records.remove(0);
    }
    for (line, record) in edge_records {
        if record.len() != 2 {
            return Err(parse_err(
                edges_name,
                line,
                format!("expected 2 fields (from,to), found {}", record.len()),
            ));
        }
        edge_rows.push(EdgeRow {
            line,
            from: record[0].to_string(),
            to: record[1].to_string(),
        });
    }

    assemble(node_rows, edge_rows).map_err(|(source, culprit)| {
        let (file, location) = match culprit {
            Culprit::Node(i) => (nodes_name, Some(Location::Line(i))),
            Culprit::Edge(i) => (edges_name, Some(Location::Line(i))),
            Culprit::Unknown => (nodes_name, None),
        };
        Error::Invalid {
            file: file.to_string(),
            location,
            source,
        }
    })
}

/// Row that triggered a build error: a line number for CSV, an index for JSON.
enum Culprit {
    Node(u64),
    Edge(u64),
    Unknown,
}

fn assemble(
    nodes: Vec<NodeRow>,
    edges: Vec<EdgeRow>,
) -> Result<GridGraph, (gridrobust_core::Error, Culprit)> {
    use gridrobust_core::Error as E;
    let assets: Vec<Asset> = nodes.iter().map(|n| n.asset.clone()).collect();
    let pairs = edges.iter().map(|e| (e.from.as_str(), e.to.as_str()));
    build_graph(assets, pairs).map_err(|err| {
        let node_line = |pred: &dyn Fn(&NodeRow) -> bool, nth: usize| {
            nodes.iter().filter(|n| pred(n)).nth(nth).map(|n| n.line)
        };
        let edge_line = |pred: &dyn Fn(&EdgeRow) -> bool, nth: usize| {
            edges.iter().filter(|e| pred(e)).nth(nth).map(|e| e.line)
        };
        let culprit = match &err {
            E::EmptyAssetId => node_line(&|n| n.asset.id.as_str().is_empty(), 0).map(Culprit::Node),
            E::DuplicateAssetId(id) => node_line(&|n| n.asset.id == *id, 1).map(Culprit::Node),
            E::DanglingEdgeEndpoint { from, to } => {
                edge_line(&|e| e.from == from.as_str() && e.to == to.as_str(), 0).map(Culprit::Edge)
            }
            E::SelfLoop(id) => {
                edge_line(&|e| e.from == id.as_str() && e.to == id.as_str(), 0).map(Culprit::Edge)
            }
            E::DuplicateEdge { from, to } => {
                edge_line(&|e| e.from == from.as_str() && e.to == to.as_str(), 1).map(Culprit::Edge)
            }
            _ => None,
        };
        (err, culprit.unwrap_or(Culprit::Unknown))
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGrid {
    #[serde(default)]
    schema_version: Option<u32>,
    nodes: Vec<JsonNode>,
    #[serde(default)]
    edges: Vec<JsonEdge>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonNode {
    id: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonEdge {
    Object { from: String, to: String },
    Pair(String, String),
}

impl JsonEdge {
    fn into_pair(self) -> (String, String) {
        match self {
            JsonEdge::Object { from, to } | JsonEdge::Pair(from, to) => (from, to),
        }
    }
}

/// Parses a JSON grid document. `name` labels errors.
pub fn parse_grid_json(text: &str, name: &str) -> Result<GridGraph, Error> {
    let doc: JsonGrid = serde_json::from_str(text).map_err(|e| Error::Parse {
        file: name.to_string(),
        location: Location::Line(e.line() as u64),
        reason: e.to_string(),
    })?;
    if let Some(v) = doc.schema_version {
        if v != SCHEMA_VERSION {
            return Err(Error::Parse {
                file: name.to_string(),
                location: Location::Element {
                    section: "schema_version",
                    index: 0,
                },
                reason: format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}"),
            });
        }
    }
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.into_iter().enumerate() {
        let kind: AssetKind = n.kind.parse().map_err(|e| Error::Parse {
            file: name.to_string(),
            location: Location::Element {
                section: "nodes",
                index: i,
            },
            reason: format!("bad kind {:?}: {e}", n.kind),
        })?;
        let mut asset = Asset::new(n.id, kind);
        if let Some(label) = n.label {
            asset = asset.with_label(label);
        }
        nodes.push(NodeRow {
            line: i as u64,
            asset,
        });
    }
    let edges = doc
        .edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let (from, to) = e.into_pair();
            EdgeRow {
                line: i as u64,
                from,
                to,
            }
        })
        .collect();
    assemble(nodes, edges).map_err(|(source, culprit)| {
        let location = match culprit {
            Culprit::Node(i) => Some(Location::Element {
                section: "nodes",
                index: i as usize,
            }),
            Culprit::Edge(i) => Some(Location::Element {
                section: "edges",
                index: i as usize,
            }),
            Culprit::Unknown => None,
        };
        Error::Invalid {
            file: name.to_string(),
            location,
            source,
        }
    })
}

/// CSV encoding of `g` as `(nodes.csv, edges.csv)` contents.
pub fn grid_to_csv(g: &GridGraph) -> (Vec<u8>, Vec<u8>) {
    let mut nodes = csv::Writer::from_writer(Vec::new());
    nodes
        .write_record(["id", "kind", "label"])
        .expect("in-memory write");
    for a in g.assets() {
        nodes
            .write_record([
                a.id.as_str(),
                a.kind.as_str(),
                a.label.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
    }
    let mut edges = csv::Writer::from_writer(Vec::new());
    edges.write_record(["from", "to"]).expect("in-memory write");
    for (from, to) in g.edges() {
        edges
            .write_record([from.as_str(), to.as_str()])
            .expect("in-memory write");
    }
    (
        nodes.into_inner().expect("in-memory flush"),
        edges.into_inner().expect("in-memory flush"),
    )
}

pub fn grid_to_json(g: &GridGraph) -> Vec<u8> {
    let doc = JsonGrid {
        schema_version: Some(SCHEMA_VERSION),
        nodes: g
            .assets()
            .iter()
            .map(|a| JsonNode {
                id: a.id.to_string(),
                kind: a.kind.as_str().to_string(),
                label: a.label.clone(),
            })
            .collect(),
        edges: g
            .edges()
            .map(|(f, t)| JsonEdge::Object {
                from: f.to_string(),
                to: t.to_string(),
            })
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("grid serializes");
    out.push(b'\n');
    out
}
