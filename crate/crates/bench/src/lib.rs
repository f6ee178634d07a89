//! Shared inputs for the benchmarks.

use std::path::PathBuf;

use evkg_core::ingest::{load_config, IngestConfig};
use evkg_core::rdf::parse_ntriples;
use evkg_core::Graph;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// The committed, fully materialized snapshot.
pub fn fixture_graph() -> Graph {
    let text = std::fs::read_to_string(fixtures_dir().join("evkg-fixture.nt")).expect("fixture snapshot");
    parse_ntriples(&text).expect("fixture snapshot parses")
}

/// Fixture build config with spatial materialization and closure turned off.
pub fn raw_config() -> IngestConfig {
    let mut config = load_config(&fixtures_dir().join("config.toml")).expect("fixture config");
    config.options.materialize_spatial = false;
    config.options.subclass_closure = false;
    config
}

/// Regular n-gon around `(cx, cy)` as WKT.
pub fn polygon_wkt(n: usize, cx: f64, cy: f64, r: f64) -> String {
    let mut pts: Vec<String> = (0..n)
        .map(|i| {
            let a = i as f64 * std::f64::consts::TAU / n as f64;
            format!("{} {}", cx + r * a.cos(), cy + r * a.sin())
        })
        .collect();
    pts.push(pts[0].clone());
    format!("POLYGON(({}))", pts.join(", "))
}
