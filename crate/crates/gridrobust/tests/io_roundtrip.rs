use gridrobust::gridfile::{
    grid_to_csv, grid_to_json, parse_grid_csv, parse_grid_json, read_grid, write_grid,
};
use gridrobust::GridFormat;
use gridrobust_core::{build_graph, Asset, AssetKind, GridGraph};
use proptest::prelude::*;

fn arb_kind() -> impl Strategy<Value = AssetKind> {
    prop_oneof![
        Just(AssetKind::Source),
        Just(AssetKind::LoadPoint),
        Just(AssetKind::Intermediate)
    ]
}

/// Ids and labels exercise quoting: commas, quotes, unicode and spaces
/// inside (never at the ends, since fields are trimmed on input).
fn arb_text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9_é\"]([a-zA-Z0-9 ,.\"é/-]{0,8}[a-zA-Z0-9_\"é])?"
}

fn arb_grid() -> impl Strategy<Value = GridGraph> {
    proptest::collection::btree_map(
        arb_text(),
        (arb_kind(), proptest::option::of(arb_text())),
        1..12,
    )
    .prop_flat_map(|nodes| {
        let n = nodes.len();
        let nodes: Vec<_> = nodes.into_iter().collect();
        (
            Just(nodes),
            proptest::collection::btree_set((0..n, 0..n), 0..3 * n),
        )
    })
    .prop_map(|(nodes, edges)| {
        let assets = nodes
            .iter()
            .map(|(id, (kind, label))| {
                let a = Asset::new(id.as_str(), *kind);
                match label {
                    Some(l) => a.with_label(l.as_str()),
                    None => a,
                }
            })
            .collect();
        let edges: Vec<(&str, &str)> = edges
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (nodes[a].0.as_str(), nodes[b].0.as_str()))
            .collect();
        build_graph(assets, edges).unwrap()
    })
}

proptest! {
    #[test]
    fn csv_round_trip(g in arb_grid()) {
        let (nodes, edges) = grid_to_csv(&g);
        let back = parse_grid_csv(
            std::str::from_utf8(&nodes).unwrap(),
            std::str::from_utf8(&edges).unwrap(),
            "nodes.csv",
            "edges.csv",
        ).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn json_round_trip(g in arb_grid()) {
        let text = grid_to_json(&g);
        prop_assert_eq!(parse_grid_json(std::str::from_utf8(&text).unwrap(), "g.json").unwrap(), g);
    }

    #[test]
    fn serialization_is_deterministic(g in arb_grid()) {
        prop_assert_eq!(grid_to_csv(&g), grid_to_csv(&g));
        prop_assert_eq!(grid_to_json(&g), grid_to_json(&g));
    }
}

#[test]
fn files_on_disk_round_trip_in_both_formats() {
    let g = build_graph(
        vec![
            Asset::source("s").with_label("feeder A"),
            Asset::intermediate("c"),
            Asset::load_point("t"),
        ],
        [("s", "c"), ("c", "t"), ("s", "t")],
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let csv_dir = dir.path().join("grid");
    write_grid(&g, &csv_dir, GridFormat::Csv).unwrap();
    assert_eq!(read_grid(&csv_dir).unwrap(), g);
    let json = dir.path().join("grid.json");
    write_grid(&g, &json, GridFormat::Json).unwrap();
    assert_eq!(read_grid(&json).unwrap(), g);
    assert_eq!(read_grid(&csv_dir).unwrap(), read_grid(&json).unwrap());
}

#[test]
fn missing_files_are_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let err = read_grid(&dir.path().join("absent.json")).unwrap_err();
    assert_eq!(err.category(), "io");
    let err = read_grid(dir.path()).unwrap_err();
    assert!(err.to_string().contains("nodes.csv"), "{err}");
}
