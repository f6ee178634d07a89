//! One check per acceptance criterion. Each returns a one-line summary on
//! success and a description of the first problem otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::time::Instant;

use evkg_core::geometry::{sf_contains, sf_crosses, sf_within, Dimension};
use evkg_core::ingest::{ingest, load_config, IngestConfig, IngestOutput};
use evkg_core::materialize::{
    feature_geometry, materialize_spatial_relations, materialize_subclass_closure, spatial_features,
};
use evkg_core::query::{evaluate_listing, listing_query, run_query, GraphPattern, TermPattern};
use evkg_core::rdf::{parse_ntriples, parse_turtle, serialize_ntriples, serialize_turtle, Graph, Term, Triple};
use evkg_core::stats::compute_stats;
use evkg_core::vocabulary::{default_prefixes, kwg, validate_instances};
use evkg_core::{registry, Geometry};
use rand::Rng;

use super::geo_oracle::{self, Ring};
use super::naive;

pub type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture_config() -> IngestConfig {
    load_config(&super::fixtures_dir().join("config.toml")).expect("fixture config")
}

fn fixture_ingest(config: &IngestConfig) -> IngestOutput {
    ingest(config).expect("fixture ingests")
}

fn read_csv(name: &str) -> Vec<BTreeMap<String, String>> {
    let mut reader = csv::Reader::from_path(super::fixtures_dir().join(name)).expect("fixture csv");
    let headers = reader.headers().unwrap().clone();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            headers.iter().zip(r.iter()).map(|(h, v)| (h.to_owned(), v.to_owned())).collect()
        })
        .collect()
}

/// Data rows of `name` the ingest kept, as reported by its skip list.
fn kept_rows(report: &evkg_core::ingest::IngestReport, name: &str) -> Vec<BTreeMap<String, String>> {
    let source = report
        .sources
        .iter()
        .find(|s| Path::new(&s.name).file_name().is_some_and(|f| f == name))
        .expect("source in report");
    let skipped: BTreeSet<usize> = source.skipped.iter().map(|s| s.row).collect();
    read_csv(name)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !skipped.contains(&(i + 1)))
        .map(|(_, r)| r)
        .collect()
}

pub fn listing_conformance() -> Check {
    let graph = super::fixture_graph();
    let mut elapsed = 0.0;
    for id in 1..=10u8 {
        let path = super::expected_dir().join(evkg_core::cq::expected_file_name(id));
        let committed = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let oracle = naive::evaluate_text(graph, &super::oracle_listing_text(id)).to_tsv();
        ensure!(oracle == committed, "listing {id}: reference evaluator disagrees with the committed file");
        let start = Instant::now();
        let actual = evaluate_listing(graph, id).map_err(|e| format!("listing {id}: {e}"))?.to_tsv();
        elapsed += start.elapsed().as_secs_f64();
        ensure!(actual == committed, "listing {id}: engine output differs from {}", path.display());
    }
    ensure!(elapsed < 5.0, "listings took {elapsed:.2} s");
    Ok(format!("10/10 listings byte-match the oracle files on {} triples in {elapsed:.3} s", graph.len()))
}

pub fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut non_empty = 0;
    for seed in 0..500u64 {
        let mut rng = super::rng(seed);
        let graph = super::random_graph(&mut rng);
        let text = super::random_query(&mut rng);
        let engine = run_query(&graph, &text).map_err(|e| format!("seed {seed}: {e}\n{text}"))?;
        let oracle = naive::evaluate_text(&graph, &text);
        ensure!(engine.to_tsv() == oracle.to_tsv(), "seed {seed} differs: {text}");
        non_empty += usize::from(!engine.is_empty());
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "500 cases took {secs:.1} s");
    Ok(format!("500/500 random cases match ({non_empty} non-empty) in {secs:.1} s"))
}

fn polygon_rings(g: &Geometry) -> Vec<Ring> {
    let Geometry::Polygon(p) = g else { panic!("expected a polygon, got {}", g.kind()) };
    std::iter::once(p.exterior())
        .chain(p.interiors().iter().map(Vec::as_slice))
        .map(|ring| ring.iter().map(|c| (c.x, c.y)).collect())
        .collect()
}

fn line_points(g: &Geometry) -> Vec<(f64, f64)> {
    let Geometry::LineString(l) = g else { panic!("expected a linestring, got {}", g.kind()) };
    l.points().iter().map(|c| (c.x, c.y)).collect()
}

pub fn spatial_correctness() -> Check {
    let mut rng = super::rng(7);
    let mut compared = 0;
    for case in 0..1000 {
        let rings = geo_oracle::random_polygon(&mut rng);
        let poly = geo_oracle::to_geometry(&rings);
        let p = (rng.gen_range(-17.0..17.0), rng.gen_range(-17.0..17.0));
        let point = Geometry::Point(evkg_core::geometry::Coord::new(p.0, p.1));
        let within = sf_within(&point, &poly);
        ensure!(within == sf_contains(&poly, &point), "case {case}: within/contains duality broken");
        if geo_oracle::boundary_distance(p, &rings) >= 1e-9 {
            compared += 1;
            ensure!(within == geo_oracle::ray_cast(p, &rings), "case {case}: {p:?} disagrees with ray casting");
        }
    }

    let mut lines_checked = 0;
    for case in 0..300 {
        let rings = geo_oracle::random_polygon(&mut rng);
        let poly = geo_oracle::to_geometry(&rings);
        let a = (rng.gen_range(-17.0..17.0), rng.gen_range(-17.0..17.0));
        let b = (rng.gen_range(-17.0..17.0), rng.gen_range(-17.0..17.0));
        let line = evkg_core::parse_wkt(&format!("LINESTRING ({} {}, {} {})", a.0, a.1, b.0, b.1)).unwrap();
        let sampled = geo_oracle::sample_line(&line_points(&line), &rings);
        let crosses = sf_crosses(&line, &poly).unwrap();
        let within = sf_within(&line, &poly);
        if sampled.inside && sampled.outside {
            ensure!(crosses && !within, "line case {case}: samples on both sides but crosses={crosses} within={within}");
        } else if sampled.clearance > 1e-6 {
            ensure!(!crosses, "line case {case}: clear of the boundary but crosses");
            ensure!(within == sampled.inside, "line case {case}: within={within}, sampled inside={}", sampled.inside);
        } else {
            continue;
        }
        lines_checked += 1;
    }

    let graph = super::fixture_graph();
    let features = spatial_features(graph, registry());
    let lines: Vec<Geometry> = features
        .iter()
        .filter_map(|f| feature_geometry(graph, f).ok())
        .filter(|g| g.dimension() == Dimension::Lineal)
        .collect();
    let polygons: Vec<Geometry> = graph
        .matches(None, Some(&evkg_core::vocabulary::geo("asWKT")), None)
        .filter_map(|t| t.object.as_literal().and_then(|l| evkg_core::parse_wkt(l.lexical()).ok()))
        .filter(|g| g.dimension() == Dimension::Polygonal)
        .collect();
    let mut pairs = 0;
    for l in &lines {
        for p in &polygons {
            ensure!(!(sf_crosses(l, p).unwrap() && sf_within(l, p)), "a fixture line both crosses and is within a polygon");
            pairs += 1;
        }
    }
    Ok(format!(
        "1000 point/polygon pairs dual ({compared} ray-cast compared), {lines_checked} sampled lines agree, {pairs} fixture line/polygon pairs exclusive"
    ))
}

fn spatial_triples(graph: &Graph) -> BTreeSet<Triple> {
    let preds = [kwg("sfWithin"), kwg("sfContains"), kwg("sfCrosses")];
    graph.iter().filter(|t| preds.contains(&t.predicate)).collect()
}

pub fn materialization_equivalence() -> Check {
    let mut config = fixture_config();
    config.options.materialize_spatial = false;
    let base = fixture_ingest(&config).graph;

    let zip_class = Term::Iri(kwg("ZipCodeArea"));
    let zips: Vec<(Term, Geometry)> = base
        .subjects(&evkg_core::vocabulary::rdf_type(), &zip_class)
        .filter_map(|z| feature_geometry(&base, &z).ok().map(|g| (z, g)))
        .collect();
    let mut expected = spatial_triples(&base);
    for f in spatial_features(&base, registry()) {
        let Ok(g) = feature_geometry(&base, &f) else { continue };
        for (z, zg) in &zips {
            match g.dimension() {
                Dimension::Puntal if sf_within(&g, zg) => {
                    expected.insert(Triple::new(f.clone(), kwg("sfWithin"), z.clone()).unwrap());
                    expected.insert(Triple::new(z.clone(), kwg("sfContains"), f.clone()).unwrap());
                }
                Dimension::Lineal if sf_crosses(&g, zg).unwrap() => {
                    expected.insert(Triple::new(f.clone(), kwg("sfCrosses"), z.clone()).unwrap());
                }
                _ => {}
            }
        }
    }

    let mut graph = base.clone();
    let report = materialize_spatial_relations(&mut graph, registry());
    let actual = spatial_triples(&graph);
    ensure!(actual == expected, "materialized {} relation triples, brute force expects {}", actual.len(), expected.len());
    ensure!(graph.len() == base.len() + report.added(), "reported counts do not match the graph growth");
    ensure!(
        serialize_ntriples(&graph) == serialize_ntriples(super::fixture_graph()),
        "materializing after ingest differs from the committed snapshot"
    );
    let again = materialize_spatial_relations(&mut graph, registry()).added();
    let closure_again = materialize_subclass_closure(&mut graph, registry());
    ensure!(again == 0 && closure_again == 0, "re-materialization added {again} + {closure_again} triples");
    Ok(format!("{} relation triples equal brute force; re-materialization adds 0", report.added()))
}

pub fn ingestion_conservation() -> Check {
    let out = fixture_ingest(&fixture_config());
    let zip_state: BTreeMap<String, String> = kept_rows(&out.report, "places.csv")
        .into_iter()
        .map(|r| (r["zip"].clone(), r["state"].clone()))
        .collect();
    let mut raw: BTreeMap<(String, String), i64> = BTreeMap::new();
    let mut raw_total = 0;
    for r in kept_rows(&out.report, "registrations.csv") {
        raw_total += 1;
        let state = zip_state.get(&r["zip"]).cloned().unwrap_or_default();
        *raw.entry((state, r["registration_year"].clone())).or_default() += 1;
    }

    let sums = run_query(
        &out.graph,
        "SELECT ?state ?year (SUM(?n) AS ?total) WHERE { \
            ?c a ev-ont:ElectricVehicleRegistrationCollection . ?c ev-ont:hasAmount ?n . \
            ?c ev-ont:hasTemporalScope ?year . ?c ev-ont:hasSpatialScope ?zip . \
            ?s a kwg-ont:AdministrativeRegion_2 . ?s kwg-ont:sfContains ?zip . ?s rdfs:label ?state \
        } GROUP BY ?state ?year",
    )
    .unwrap();
    let mut graph_counts = BTreeMap::new();
    for row in &sums.rows {
        let lex = |i: usize| row[i].as_ref().and_then(|t| t.as_literal()).map(|l| l.lexical().to_owned()).unwrap();
        graph_counts.insert((lex(0), lex(1)), lex(2).parse::<i64>().unwrap());
    }
    ensure!(graph_counts == raw, "per (state, year) sums differ:\n graph {graph_counts:?}\n raw   {raw:?}");
    let grand = run_query(&out.graph, "SELECT (SUM(?n) AS ?t) WHERE { ?c a ev-ont:ElectricVehicleRegistrationCollection . ?c ev-ont:hasAmount ?n }").unwrap();
    let grand: i64 = grand.rows[0][0].as_ref().unwrap().as_literal().unwrap().lexical().parse().unwrap();
    ensure!(grand == raw_total, "total amount {grand} != {raw_total} kept records");

    let case = run_query(
        &out.graph,
        "SELECT ?c ?n ?label WHERE { ?c ev-ont:hasSpatialScope evr:zipcode.07677 . \
            ?c ev-ont:hasTemporalScope \"2019\"^^xsd:gYear . ?c ev-ont:hasAmount ?n . \
            ?c ev-ont:hasProductInfo ?p . ?p rdfs:label ?label }",
    )
    .unwrap();
    ensure!(case.len() == 1, "expected one 07677/2019 collection, found {}", case.len());
    let n = case.rows[0][1].as_ref().unwrap().as_literal().unwrap().lexical().to_owned();
    ensure!(n == "36", "the 36-record collection has amount {n}");
    Ok(format!("{} (state, year) groups conserve {raw_total} records; 36 identical records form one collection", raw.len()))
}

pub fn round_trip_determinism() -> Check {
    let config = fixture_config();
    let first = serialize_ntriples(&fixture_ingest(&config).graph);
    let second = serialize_ntriples(&fixture_ingest(&config).graph);
    ensure!(first == second, "two ingests of the same inputs differ");
    let committed = fs::read_to_string(super::fixtures_dir().join("evkg-fixture.nt")).unwrap();
    ensure!(first == committed, "ingest output differs from the committed snapshot");
    let reimported = serialize_ntriples(&parse_ntriples(&first).map_err(|e| e.to_string())?);
    ensure!(reimported == first, "N-Triples export/import/export is not byte-identical");
    let ttl = serialize_turtle(&parse_ntriples(&first).unwrap(), &default_prefixes());
    let via_turtle = parse_turtle(&ttl).map_err(|e| e.to_string())?;
    ensure!(serialize_ntriples(&via_turtle) == first, "Turtle round trip changes the graph");
    ensure!(serialize_turtle(&via_turtle, &default_prefixes()) == ttl, "Turtle export is not stable");
    Ok(format!("{} bytes identical across ingest, re-ingest, N-Triples and Turtle round trips", first.len()))
}

/// Point-in-polygon for the zips of `places.csv` with the independent ray caster.
fn zip_of(zips: &BTreeMap<String, Vec<Ring>>, p: (f64, f64)) -> Option<String> {
    zips.iter()
        .find(|(_, rings)| geo_oracle::boundary_distance(p, rings) > 1e-9 && geo_oracle::ray_cast(p, rings))
        .map(|(z, _)| z.clone())
}

fn zip_polygons(rows: &[BTreeMap<String, String>]) -> BTreeMap<String, Vec<Ring>> {
    rows.iter()
        .map(|r| (r["zip"].clone(), polygon_rings(&evkg_core::parse_wkt(&r["wkt"]).unwrap())))
        .collect()
}

fn station_id(term: &Term) -> String {
    term.as_iri().unwrap().as_str().rsplit("chargingstation.").next().unwrap().replace('_', "-")
}

fn local_after(term: &Term, marker: &str) -> String {
    term.to_ntriples().trim_end_matches('>').rsplit(marker).next().unwrap().to_owned()
}

fn connectors(field: &str) -> BTreeSet<String> {
    field.split(';').map(|c| if c == "CCS" { "J1772COMBO".to_owned() } else { c.to_owned() }).collect()
}

pub fn scenario_checks() -> Check {
    let out = fixture_ingest(&fixture_config());
    let places = kept_rows(&out.report, "places.csv");
    let zips = zip_polygons(&places);
    let stations = kept_rows(&out.report, "stations.csv");
    let registrations = kept_rows(&out.report, "registrations.csv");
    let graph = super::fixture_graph();

    // Q3: every filter of the listing, recomputed from the CSV rows
    let leaf_2021: BTreeSet<String> = registrations
        .iter()
        .filter(|r| r["make"] == "Nissan" && r["model"] == "Leaf" && r["model_year"] == "2021")
        .flat_map(|r| connectors(&r["connector_types"]))
        .collect();
    let listed: BTreeSet<&str> = ["CHAdeMO", "J1772COMBO", "TESLA"].into();
    let mut want_q3 = BTreeSet::new();
    for s in &stations {
        let p = (s["lon"].parse::<f64>().unwrap(), s["lat"].parse::<f64>().unwrap());
        if zip_of(&zips, p).as_deref() != Some("95814")
            || s["access"] != "public"
            || s["operating_hours"] != "24 hours daily  "
            || s["network"] != "ChargePoint"
        {
            continue;
        }
        for group in s["charger_groups"].split(';') {
            let connector = group.split(':').nth(1).unwrap();
            if leaf_2021.contains(connector) && listed.contains(connector) {
                want_q3.insert((connector.to_owned(), s["station_id"].clone()));
            }
        }
    }
    let q3 = evaluate_listing(graph, 3).unwrap();
    let got_q3: BTreeSet<(String, String)> = q3
        .rows
        .iter()
        .map(|r| (local_after(r[0].as_ref().unwrap(), "connectortype."), station_id(r[1].as_ref().unwrap())))
        .collect();
    ensure!(!want_q3.is_empty(), "the Q3 scenario selects nothing");
    ensure!(got_q3 == want_q3, "Q3 returned {got_q3:?}, recomputation gives {want_q3:?}");

    // Q6: ratio < 0.1 and > 98 registrations among zips crossed by a "500" line
    let nj: BTreeSet<String> = places.iter().filter(|r| r["state"] == "New Jersey").map(|r| r["zip"].clone()).collect();
    let mut chargers: BTreeMap<String, i64> = BTreeMap::new();
    for s in &stations {
        let p = (s["lon"].parse::<f64>().unwrap(), s["lat"].parse::<f64>().unwrap());
        let Some(zip) = zip_of(&zips, p).filter(|z| nj.contains(z)) else { continue };
        for group in s["charger_groups"].split(';') {
            let parts: Vec<&str> = group.split(':').collect();
            if connectors(parts[1]).contains("J1772COMBO") {
                *chargers.entry(zip.clone()).or_default() += parts[2].parse::<i64>().unwrap();
            }
        }
    }
    let mut regs: BTreeMap<String, i64> = BTreeMap::new();
    for r in &registrations {
        if r["registration_year"] == "2021" && nj.contains(&r["zip"]) && connectors(&r["connector_types"]).contains("J1772COMBO") {
            *regs.entry(r["zip"].clone()).or_default() += 1;
        }
    }
    let crossed: BTreeSet<String> = read_csv("transmission.csv")
        .iter()
        .filter(|r| r["kind"] == "line" && r["voltage_class"] == "500")
        .filter_map(|r| evkg_core::parse_wkt(&r["wkt"]).ok())
        .flat_map(|line| {
            let pts = line_points(&line);
            zips.iter()
                .filter(|(z, rings)| {
                    let s = geo_oracle::sample_line(&pts, rings);
                    nj.contains(*z) && s.inside && s.outside
                })
                .map(|(z, _)| z.clone())
                .collect::<Vec<_>>()
        })
        .collect();
    let low_ratio: BTreeSet<String> = chargers
        .iter()
        .filter(|(z, c)| regs.get(*z).is_some_and(|r| **c * 10 < *r))
        .map(|(z, _)| z.clone())
        .collect();
    let many_regs: BTreeSet<String> = regs.iter().filter(|(_, r)| **r > 98).map(|(z, _)| z.clone()).collect();
    let want_q6: BTreeSet<String> = crossed
        .iter()
        .filter(|z| low_ratio.contains(*z) && many_regs.contains(*z))
        .cloned()
        .collect();
    let outcome = evkg_core::cq::run_question(graph, 6, None).unwrap();
    let got_q6: BTreeSet<String> = outcome.artifacts[0].contents.lines().map(str::to_owned).collect();
    ensure!(!want_q6.is_empty(), "the Q6 scenario selects nothing");
    ensure!(got_q6 == want_q6, "Q6 selected {got_q6:?}, recomputation gives {want_q6:?}");
    Ok(format!("Q3 selects {want_q3:?}; Q6 selects {want_q6:?}; both match recomputation"))
}

fn pattern_triples<'a>(p: &'a GraphPattern, out: &mut Vec<&'a evkg_core::query::TriplePattern>) {
    match p {
        GraphPattern::Bgp(tps) => out.extend(tps),
        GraphPattern::Group(items) => items.iter().for_each(|i| pattern_triples(i, out)),
        GraphPattern::Union(a, b) => {
            pattern_triples(a, out);
            pattern_triples(b, out);
        }
        GraphPattern::SubSelect(q) => pattern_triples(&q.pattern, out),
        GraphPattern::Filter(_) | GraphPattern::Values(_) => {}
    }
}

pub fn vocabulary_completeness() -> Check {
    let reg = registry();
    let ty = evkg_core::vocabulary::rdf_type();
    let mut checked = BTreeSet::new();
    for id in 1..=10u8 {
        let q = listing_query(id).map_err(|e| e.to_string())?;
        let mut tps = Vec::new();
        pattern_triples(&q.pattern, &mut tps);
        for tp in tps {
            let TermPattern::Term(Term::Iri(p)) = &tp.predicate else { continue };
            ensure!(reg.resolves(p), "listing {id}: predicate {p} is not in the registry");
            checked.insert(p.clone());
            if *p == ty {
                if let TermPattern::Term(Term::Iri(c)) = &tp.object {
                    ensure!(reg.class(c).is_some(), "listing {id}: class {c} is not in the registry");
                    checked.insert(c.clone());
                }
            }
        }
    }

    let graph = super::fixture_graph();
    let violations = validate_instances(graph, reg);
    ensure!(violations.is_empty(), "{} violations, first: {:?}", violations.len(), violations[0]);

    // recount straight from the snapshot text
    let text = fs::read_to_string(super::fixtures_dir().join("evkg-fixture.nt")).unwrap();
    let type_iri = format!("<{}>", ty.as_str());
    let mut typed: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut statements = 0;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        statements += 1;
        let parts: Vec<&str> = line.splitn(3, ' ').collect();
        if parts[1] == type_iri {
            let class = parts[2].trim_end_matches(" .").trim_matches(|c| c == '<' || c == '>');
            typed.entry(class.to_owned()).or_default().insert(parts[0].to_owned());
        }
    }
    let stats = compute_stats(graph, reg);
    for row in &stats.rows {
        let iri = if row.label == "RoadSegment" || row.label == "RoadSegmentNode" {
            format!("{}{}", evkg_core::vocabulary::ns::KWG_ONT, row.label)
        } else {
            format!("{}{}", evkg_core::vocabulary::ns::EV_ONT, row.label)
        };
        let recount = typed.get(&iri).map_or(0, BTreeSet::len);
        ensure!(row.count == recount, "{}: stats {} vs recount {recount}", row.label, row.count);
    }
    let entities: BTreeSet<&String> = typed
        .iter()
        .filter(|(c, _)| reg.class(&evkg_core::rdf::Iri::new(c.as_str()).unwrap()).is_some())
        .flat_map(|(_, s)| s.iter().filter(|s| s.starts_with('<')))
        .collect();
    ensure!(stats.statements == statements, "statements {} vs {statements} lines", stats.statements);
    ensure!(stats.entities == entities.len(), "entities {} vs recount {}", stats.entities, entities.len());
    ensure!(
        stats.properties == reg.properties().len() && stats.classes == reg.classes().len(),
        "registry totals disagree"
    );
    let typed_sum: usize = stats.rows.iter().map(|r| r.count).sum();
    ensure!(stats.statements >= typed_sum, "statements below the typed-entity sum");
    Ok(format!(
        "{} listing IRIs resolve; 0 violations; stats match the recount ({} statements, {} entities)",
        checked.len(),
        statements,
        entities.len()
    ))
}
