#![allow(dead_code)]

pub mod checks;
pub mod geo_oracle;
pub mod naive;

use std::path::PathBuf;
use std::sync::OnceLock;

use evkg_core::rdf::{parse_ntriples, Graph, Iri, Literal, Term};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixtures_dir() -> PathBuf {
    workspace_root().join("fixtures")
}

pub fn expected_dir() -> PathBuf {
    fixtures_dir().join("expected")
}

/// The committed, already materialized fixture snapshot.
pub fn fixture_graph() -> &'static Graph {
    static GRAPH: OnceLock<Graph> = OnceLock::new();
    GRAPH.get_or_init(|| {
        let text = std::fs::read_to_string(fixtures_dir().join("evkg-fixture.nt")).expect("fixture snapshot");
        parse_ntriples(&text).expect("fixture snapshot parses")
    })
}

/// Query text for a listing as the oracle sees it: the bundled file, or the
/// hand-inlined version for listings that embed others.
pub fn oracle_listing_text(id: u8) -> String {
    if evkg_core::query::FEDERATED_LISTINGS.contains(&id) {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/data/inlined/listing{id:02}.rq"));
        std::fs::read_to_string(path).expect("inlined listing")
    } else {
        evkg_core::query::listing_source(id).unwrap().to_owned()
    }
}

const NS: &str = "http://example.org/";

fn ex(local: &str) -> Iri {
    Iri::new(format!("{NS}{local}")).unwrap()
}

fn random_object(rng: &mut ChaCha8Rng) -> Term {
    match rng.gen_range(0..4) {
        0 | 1 => Term::Iri(ex(&format!("n{}", rng.gen_range(0..8)))),
        2 => Term::Literal(Literal::integer(rng.gen_range(-3..6))),
        _ => Term::Literal(Literal::string(["a", "b", "c"][rng.gen_range(0..3)])),
    }
}

/// A graph of up to 200 triples over a small vocabulary so patterns collide often.
pub fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new();
    let n = rng.gen_range(0..=200);
    for _ in 0..n {
        let s = Term::Iri(ex(&format!("n{}", rng.gen_range(0..8))));
        let p = ex(&format!("p{}", rng.gen_range(0..3)));
        g.add(s, &p, random_object(rng)).unwrap();
    }
    g
}

const VARS: [&str; 4] = ["?a", "?b", "?c", "?d"];

fn term_text(rng: &mut ChaCha8Rng, position: usize) -> String {
    if rng.gen_bool(0.7) {
        return VARS.choose(rng).unwrap().to_string();
    }
    match position {
        0 => format!("<{NS}n{}>", rng.gen_range(0..8)),
        1 => format!("<{NS}p{}>", rng.gen_range(0..3)),
        _ => random_object(rng).to_ntriples(),
    }
}

fn triple_text(rng: &mut ChaCha8Rng) -> String {
    let s = term_text(rng, 0);
    // predicates are mostly constant, as in real queries
    let p = if rng.gen_bool(0.8) { format!("<{NS}p{}>", rng.gen_range(0..3)) } else { term_text(rng, 1) };
    let o = term_text(rng, 2);
    format!("{s} {p} {o} .")
}

fn filter_text(rng: &mut ChaCha8Rng) -> String {
    let v = VARS.choose(rng).unwrap();
    let w = VARS.choose(rng).unwrap();
    let op = ["=", "!=", "<", ">", "<=", ">="].choose(rng).unwrap();
    match rng.gen_range(0..4) {
        0 => format!("FILTER({v} {op} {})", rng.gen_range(-2..5)),
        1 => format!("FILTER({v} {op} {w})"),
        2 => format!("FILTER({v} = <{NS}n{}> || {w} {op} \"b\")", rng.gen_range(0..8)),
        _ => format!("FILTER(!({v} + 1 {op} {w} * 2))"),
    }
}

/// A SELECT with at most four triple patterns, possibly split across a UNION,
/// with optional FILTER and DISTINCT.
pub fn random_query(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(1..=4);
    let triples: Vec<String> = (0..n).map(|_| triple_text(rng)).collect();
    let body = if n >= 2 && rng.gen_bool(0.5) {
        let split = rng.gen_range(1..n);
        let (left, right) = triples.split_at(split);
        let mut left_group = left.join(" ");
        if rng.gen_bool(0.3) {
            left_group.push(' ');
            left_group.push_str(&filter_text(rng));
        }
        if split > 1 && rng.gen_bool(0.5) {
            // keep one pattern outside the union to exercise the join
            let (outer, inner) = left.split_at(1);
            format!("{} {{ {} }} UNION {{ {} }}", outer[0], inner.join(" "), right.join(" "))
        } else {
            format!("{{ {left_group} }} UNION {{ {} }}", right.join(" "))
        }
    } else {
        triples.join(" ")
    };
    let filter = if rng.gen_bool(0.5) { filter_text(rng) } else { String::new() };
    let distinct = if rng.gen_bool(0.4) { "DISTINCT " } else { "" };
    let projection = if rng.gen_bool(0.4) {
        "*".to_owned()
    } else {
        let mut vs: Vec<&str> = VARS.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if vs.is_empty() {
            vs.push("?a");
        }
        vs.join(" ")
    };
    format!("SELECT {distinct}{projection} WHERE {{ {body} {filter} }}")
}

/// A grouped query summing an integer-valued variable.
pub fn random_grouped_query(rng: &mut ChaCha8Rng) -> String {
    let key = if rng.gen_bool(0.5) { "?s" } else { "?p" };
    let distinct = if rng.gen_bool(0.3) { "DISTINCT " } else { "" };
    format!(
        "SELECT {key} (SUM({distinct}?o) AS ?total) WHERE {{ ?s ?p ?o . FILTER(?o >= -100) }} GROUP BY {key}"
    )
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
