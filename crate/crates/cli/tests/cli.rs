use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use evkg_core::materialize::{materialize_spatial_relations, materialize_subclass_closure};
use evkg_core::rdf::{parse_ntriples, serialize_ntriples};
use evkg_core::registry;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn snapshot() -> PathBuf {
    fixtures().join("evkg-fixture.nt")
}

fn evkg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evkg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn ingest_writes_the_committed_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.nt");
    let o = evkg(&["ingest", "-c", p(&fixtures().join("config.toml")), "-o", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("validation violations: 0"));
    assert_eq!(fs::read(&out).unwrap(), fs::read(snapshot()).unwrap());
}

#[test]
fn ingest_with_absent_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.toml");
    fs::write(&config, "[inputs]\nplaces = \"nowhere.csv\"\n").unwrap();
    let o = evkg(&["ingest", "-c", p(&config), "-o", p(&dir.path().join("g.nt"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nowhere.csv"));
}

#[test]
fn materialize_prints_what_it_adds() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.toml");
    let f = fixtures();
    fs::write(
        &config,
        format!(
            "[inputs]\nplaces = \"{}\"\nstations = \"{}\"\ntransmission = \"{}\"\n[options]\nmaterialize_spatial = false\nsubclass_closure = false\n",
            p(&f.join("places.csv")),
            p(&f.join("stations.csv")),
            p(&f.join("transmission.csv"))
        ),
    )
    .unwrap();
    let raw = dir.path().join("raw.nt");
    assert!(evkg(&["ingest", "-c", p(&config), "-o", p(&raw)]).status.success());

    let mut graph = parse_ntriples(&fs::read_to_string(&raw).unwrap()).unwrap();
    let report = materialize_spatial_relations(&mut graph, registry());
    let closure = materialize_subclass_closure(&mut graph, registry());

    let out = dir.path().join("out.nt");
    let o = evkg(&["materialize", "-i", p(&raw), "-o", p(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains(&format!("kwg-ont:sfWithin\t{}\n", report.within_added)));
    assert!(text.contains(&format!("kwg-ont:sfCrosses\t{}\n", report.crosses_added)));
    assert!(text.contains(&format!("total\t{}\n", report.added())));
    assert!(text.contains(&format!("\t{closure}\n")));
    assert_eq!(fs::read_to_string(&out).unwrap(), serialize_ntriples(&graph));
}

#[test]
fn query_outputs_sorted_tsv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.rq");
    fs::write(&q, evkg_core::query::listing_source(1).unwrap()).unwrap();
    let o = evkg(&["query", "-i", p(&snapshot()), "-q", p(&q), "--format", "tsv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "?lev\n\"Nissan Leaf\"\n");
    let o = evkg(&["query", "-i", p(&snapshot()), "-q", p(&q), "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["head"]["vars"][0], "lev");
    assert_eq!(json["results"]["bindings"][0]["lev"]["value"], "Nissan Leaf");
}

#[test]
fn invalid_query_exits_3_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("bad.rq");
    fs::write(&q, "SELECT ?x WHERE { ?x ?y }").unwrap();
    let o = evkg(&["query", "-i", p(&snapshot()), "-q", p(&q)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn grouped_query_warns_about_non_key_projection() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("g.rq");
    fs::write(&q, "SELECT ?s (SUM(?o) AS ?t) WHERE { ?s ?p ?o } GROUP BY ?p").unwrap();
    let o = evkg(&["query", "-i", p(&snapshot()), "-q", p(&q)]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn cq_suite_passes_against_committed_expectations() {
    let o = evkg(&["cq", "-i", p(&snapshot()), "--expected", p(&fixtures().join("expected"))]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    assert_eq!(stdout(&o).matches(": PASS").count(), 6);
}

#[test]
fn cq_mismatch_exits_1_with_unified_diff() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("q6_zips.txt"), "07677\n").unwrap();
    let o = evkg(&["cq", "-i", p(&snapshot()), "-q", "6", "--expected", p(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("+08817"));
}

#[test]
fn cq_writes_series_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = evkg(&["cq", "-i", p(&snapshot()), "-q", "4", "--out", p(dir.path())]);
    assert!(o.status.success());
    let series = fs::read_to_string(dir.path().join("q4_series.csv")).unwrap();
    assert!(series.starts_with("year,connector,dcfc_count,ev_count,dcfc_per_ev\n"));
    assert!(dir.path().join("listing06.tsv").exists());
}

#[test]
fn cq_on_empty_graph_is_vacuous() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.nt");
    fs::write(&empty, "").unwrap();
    let o = evkg(&["cq", "-i", p(&empty), "-q", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("vacuous"));
}

#[test]
fn stats_report_table_rows_and_totals() {
    let o = evkg(&["stats", "-i", p(&snapshot())]);
    assert!(o.status.success());
    let text = stdout(&o);
    let order = ["ChargingStation", "ChargerCollection", "ElectricVehicleRegistrationCollection", "RoadSegmentNode"];
    let positions: Vec<usize> = order.iter().map(|l| text.find(l).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let statements = parse_ntriples(&fs::read_to_string(snapshot()).unwrap()).unwrap().len();
    assert!(text.contains(&format!("Total number of statements {statements:>19}")) || text.contains(&statements.to_string()));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.nt");
    fs::write(&empty, "").unwrap();
    let text = stdout(&evkg(&["stats", "-i", p(&empty)]));
    assert!(text.contains(&format!("{}", registry().classes().len())));
}

#[test]
fn export_and_reimport_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, ttl) = (dir.path().join("a.nt"), dir.path().join("b.nt"), dir.path().join("g.ttl"));
    assert!(evkg(&["export", "-i", p(&snapshot()), "-o", p(&a)]).status.success());
    assert!(evkg(&["export", "-i", p(&a), "-o", p(&b)]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(evkg(&["export", "-i", p(&a), "-o", p(&ttl), "--format", "ttl"]).status.success());
    let c = dir.path().join("c.nt");
    assert!(evkg(&["export", "-i", p(&ttl), "-o", p(&c)]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn ontology_export_parses_as_turtle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("evkg-ontology.ttl");
    assert!(evkg(&["export-ontology", "-o", p(&out)]).status.success());
    let g = evkg_core::rdf::parse_turtle(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(g.len() > registry().classes().len());
}
