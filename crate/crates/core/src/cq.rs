//! Competency-question suite: runs the bundled listings for each question,
//! compares them with expected result files and derives plot-ready tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use similar::TextDiff;

use crate::query::{evaluate_listing, QueryError, Solutions};
use crate::rdf::{Graph, Literal, Term};
use crate::vocabulary::rdfs_label;

/// Listings answering each question.
pub fn question_listings(question: u8) -> Option<&'static [u8]> {
    match question {
        1 => Some(&[1]),
        2 => Some(&[2]),
        3 => Some(&[3]),
        4 => Some(&[4, 5, 6]),
        5 => Some(&[7, 8]),
        6 => Some(&[9, 10]),
        _ => None,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CqError {
    #[error("unknown competency question {0} (expected 1 to 6)")]
    UnknownQuestion(u8),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CqStatus {
    Pass,
    /// Every result is empty and nothing contradicts that.
    VacuousPass,
    Fail,
}

impl fmt::Display for CqStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CqStatus::Pass => "PASS",
            CqStatus::VacuousPass => "PASS (vacuous: empty results)",
            CqStatus::Fail => "FAIL",
        })
    }
}

/// A derived data file, such as a CSV series.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

#[derive(Clone, Debug)]
pub struct CqOutcome {
    pub question: u8,
    pub status: CqStatus,
    /// TSV results per listing.
    pub results: Vec<(u8, String)>,
    pub artifacts: Vec<Artifact>,
    /// Unified diffs for every mismatching file.
    pub diffs: Vec<String>,
}

/// File name of the expected TSV for a listing.
pub fn expected_file_name(listing: u8) -> String {
    format!("listing{listing:02}.tsv")
}

/// Runs one question. With `expected`, each listing's TSV (and each artifact)
/// is compared with the same-named file in that directory when it exists.
pub fn run_question(graph: &Graph, question: u8, expected: Option<&Path>) -> Result<CqOutcome, CqError> {
    let listings = question_listings(question).ok_or(CqError::UnknownQuestion(question))?;
    let mut solved: BTreeMap<u8, Solutions> = BTreeMap::new();
    for &id in listings {
        solved.insert(id, evaluate_listing(graph, id)?);
    }
    let results: Vec<(u8, String)> = solved.iter().map(|(id, s)| (*id, s.to_tsv())).collect();
    let artifacts = match question {
        4 => vec![q4_series(graph, &solved[&4], &solved[&5])],
        5 => vec![q5_series(graph, &solved[&7], &solved[&8])],
        6 => vec![q6_zips(graph, &solved[&9], &solved[&10])],
        _ => Vec::new(),
    };
    let mut diffs = Vec::new();
    if let Some(dir) = expected {
        let files = results
            .iter()
            .map(|(id, tsv)| (expected_file_name(*id), tsv))
            .chain(artifacts.iter().map(|a| (a.file_name.clone(), &a.contents)));
        for (name, actual) in files {
            let path = dir.join(&name);
            if !path.exists() {
                continue;
            }
            let want = fs::read_to_string(&path).map_err(|source| CqError::Io { path: path.clone(), source })?;
            if &want != actual {
                diffs.push(
                    TextDiff::from_lines(want.as_str(), actual.as_str())
                        .unified_diff()
                        .header(&format!("expected/{name}"), &format!("actual/{name}"))
                        .to_string(),
                );
            }
        }
    }
    let status = if !diffs.is_empty() {
        CqStatus::Fail
    } else if solved.values().all(Solutions::is_empty) {
        CqStatus::VacuousPass
    } else {
        CqStatus::Pass
    };
    Ok(CqOutcome {
        question,
        status,
        results,
        artifacts,
        diffs,
    })
}

fn label(graph: &Graph, term: &Term) -> Option<String> {
    graph
        .objects(term, &rdfs_label())
        .find_map(|t| t.as_literal().map(|l| l.lexical().to_owned()))
}

fn lexical(cell: Option<&Term>) -> String {
    match cell {
        Some(Term::Literal(l)) => l.lexical().to_owned(),
        Some(other) => other.to_ntriples(),
        None => String::new(),
    }
}

/// Five-digit code of a zip-area term, from its "zip code NNNNN" label.
pub fn zip_code(graph: &Graph, term: &Term) -> String {
    label(graph, term)
        .and_then(|l| l.strip_prefix("zip code ").map(str::to_owned))
        .unwrap_or_else(|| term.to_ntriples())
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

fn ratio(num: &str, den: &str) -> String {
    match (num.parse::<f64>(), den.parse::<f64>()) {
        (Ok(n), Ok(d)) if d != 0.0 => Literal::decimal(n / d).lexical().to_owned(),
        _ => String::new(),
    }
}

/// DC fast chargers and compatible registrations per (year, connector).
fn q4_series(graph: &Graph, chargers: &Solutions, evs: &Solutions) -> Artifact {
    let mut series: BTreeMap<(String, String), (String, String)> = BTreeMap::new();
    let (co, n, year) = (
        chargers.column("co"),
        chargers.column("zip_dcfc_num"),
        chargers.column("year"),
    );
    for i in 0..chargers.len() {
        let connector = co[i].and_then(|t| label(graph, t)).unwrap_or_else(|| lexical(co[i]));
        series.entry((lexical(year[i]), connector)).or_default().0 = lexical(n[i]);
    }
    let (name, year, n) = (evs.column("co_name"), evs.column("reg_year"), evs.column("ev_with_dc_num"));
    for i in 0..evs.len() {
        series.entry((lexical(year[i]), lexical(name[i]))).or_default().1 = lexical(n[i]);
    }
    let contents = csv_text(
        &["year", "connector", "dcfc_count", "ev_count", "dcfc_per_ev"],
        series.into_iter().map(|((year, connector), (dcfc, ev))| {
            let r = ratio(&dcfc, &ev);
            vec![year, connector, dcfc, ev, r]
        }),
    );
    Artifact {
        file_name: "q4_series.csv".into(),
        contents,
    }
}

/// CCS chargers and CCS-compatible registrations per zip code.
fn q5_series(graph: &Graph, regs: &Solutions, shares: &Solutions) -> Artifact {
    let mut series: BTreeMap<String, [String; 3]> = BTreeMap::new();
    let (zip, n) = (regs.column("zipcode"), regs.column("zipRegNum"));
    for i in 0..regs.len() {
        if let Some(z) = zip[i] {
            series.entry(zip_code(graph, z)).or_default()[0] = lexical(n[i]);
        }
    }
    let (zip, c, r) = (shares.column("zipcode"), shares.column("zipChargerNum"), shares.column("ratio"));
    for i in 0..shares.len() {
        if let Some(z) = zip[i] {
            let entry = series.entry(zip_code(graph, z)).or_default();
            entry[1] = lexical(c[i]);
            entry[2] = lexical(r[i]);
        }
    }
    let contents = csv_text(
        &["zip", "registrations", "ccs_chargers", "chargers_per_ev"],
        series.into_iter().map(|(zip, [regs, chargers, ratio])| vec![zip, regs, chargers, ratio]),
    );
    Artifact {
        file_name: "q5_series.csv".into(),
        contents,
    }
}

fn zip_set(graph: &Graph, s: &Solutions) -> BTreeSet<String> {
    s.column("zipcode").into_iter().flatten().map(|z| zip_code(graph, z)).collect()
}

/// Zips meeting both conditions: low charger share and high registrations.
fn q6_zips(graph: &Graph, low_share: &Solutions, many_evs: &Solutions) -> Artifact {
    let selected: Vec<String> = zip_set(graph, low_share)
        .intersection(&zip_set(graph, many_evs))
        .cloned()
        .collect();
    let mut contents = selected.join("\n");
    if !contents.is_empty() {
        contents.push('\n');
    }
    Artifact {
        file_name: "q6_zips.txt".into(),
        contents,
    }
}
