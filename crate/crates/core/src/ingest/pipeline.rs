use std::fmt;
use std::fs::File;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::records::{read_places, read_registrations, read_stations, read_transmission, Loaded, RowIssue};
use super::{
    aggregate_registrations, triplify_adoption, triplify_places, triplify_stations, triplify_transmission,
    IngestError, ProductCatalog,
};
use crate::materialize::{materialize_spatial_relations, materialize_subclass_closure, SpatialReport};
use crate::rdf::{Graph, Term};
use crate::vocabulary::{
    default_prefixes, individuals_graph, rdf_type, registry, schema_graph, validate_instances, Violation,
};

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    pub registrations: Option<PathBuf>,
    pub stations: Option<PathBuf>,
    pub transmission: Option<PathBuf>,
    pub places: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    pub materialize_spatial: bool,
    pub subclass_closure: bool,
    pub include_schema: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            materialize_spatial: true,
            subclass_closure: true,
            include_schema: false,
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub snapshot: Option<PathBuf>,
}

/// Declarative build description, read from TOML. Relative paths are
/// resolved against the config file's directory by [`load_config`].
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IngestConfig {
    #[serde(default)]
    pub inputs: Inputs,
    #[serde(default)]
    pub options: Options,
    #[serde(default)]
    pub output: Output,
}

pub fn load_config(path: &Path) -> Result<IngestConfig, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut config: IngestConfig = toml::from_str(&text).map_err(|e| IngestError::Config {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    let base = path.parent().unwrap_or(Path::new(""));
    for p in [
        &mut config.inputs.registrations,
        &mut config.inputs.stations,
        &mut config.inputs.transmission,
        &mut config.inputs.places,
        &mut config.output.snapshot,
    ].into_iter().flatten() {
        if p.is_relative() {
            *p = base.join(&*p);
        }
    }
    Ok(config)
}

/// Per-source read statistics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceReport {
    pub name: String,
    pub records: usize,
    pub skipped: Vec<RowIssue>,
}

#[derive(Clone, Debug, Default)]
pub struct IngestReport {
    pub sources: Vec<SourceReport>,
    pub collections: usize,
    pub products: usize,
    /// `(class CURIE, instance count)` for every registry class with instances.
    pub class_counts: Vec<(String, usize)>,
    pub spatial: Option<SpatialReport>,
    pub closure_added: usize,
    pub violations: Vec<Violation>,
    pub triples: usize,
}

impl IngestReport {
    pub fn skipped_rows(&self) -> usize {
        self.sources.iter().map(|s| s.skipped.len()).sum()
    }
}

impl fmt::Display for IngestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sources {
            writeln!(f, "{}: {} records, {} skipped", s.name, s.records, s.skipped.len())?;
            for issue in &s.skipped {
                writeln!(f, "  row {}: {}", issue.row, issue.message)?;
            }
        }
        writeln!(f, "registration collections: {}", self.collections)?;
        writeln!(f, "products: {}", self.products)?;
        for (class, n) in &self.class_counts {
            writeln!(f, "{class}\t{n}")?;
        }
        if let Some(spatial) = &self.spatial {
            write!(f, "{spatial}")?;
        }
        writeln!(f, "subclass closure added: {}", self.closure_added)?;
        writeln!(f, "validation violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        write!(f, "triples: {}", self.triples)
    }
}

pub struct IngestOutput {
    pub graph: Graph,
    pub report: IngestReport,
}

fn open(path: &Path) -> Result<File, IngestError> {
    File::open(path).map_err(|source| IngestError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read<T>(
    path: &Option<PathBuf>,
    reader: fn(File, &str) -> Result<Loaded<T>, IngestError>,
    sources: &mut Vec<SourceReport>,
) -> Result<Vec<T>, IngestError> {
    let Some(path) = path else {
        return Ok(Vec::new());
    };
    let name = path.display().to_string();
    let loaded = reader(open(path)?, &name)?;
    sources.push(SourceReport {
        name,
        records: loaded.records.len(),
        skipped: loaded.skipped,
    });
    Ok(loaded.records)
}

/// Runs every configured pipeline, merges the results with the shared
/// individuals, applies the configured materializations and validates.
pub fn ingest(config: &IngestConfig) -> Result<IngestOutput, IngestError> {
    let reg = registry();
    let mut report = IngestReport::default();
    let mut graph = Graph::with_prefixes(default_prefixes());
    graph.merge(&individuals_graph());

    let places = read(&config.inputs.places, read_places, &mut report.sources)?;
    graph.merge(&triplify_places(&places)?);

    let registrations = read(&config.inputs.registrations, read_registrations, &mut report.sources)?;
    let agg = aggregate_registrations(&registrations);
    if let Some(source) = report.sources.iter_mut().find(|s| Some(Path::new(&s.name)) == config.inputs.registrations.as_deref()) {
        source.records -= agg.skipped.len();
        source.skipped.extend(agg.skipped.iter().cloned());
        source.skipped.sort_by_key(|s| s.row);
    }
    let catalog = ProductCatalog::from_keys(agg.collections.iter().map(|c| &c.product))?;
    report.collections = agg.collections.len();
    report.products = catalog.len();
    graph.merge(&triplify_adoption(&agg.collections, &catalog)?);

    let stations = read(&config.inputs.stations, read_stations, &mut report.sources)?;
    graph.merge(&triplify_stations(&stations)?);

    let assets = read(&config.inputs.transmission, read_transmission, &mut report.sources)?;
    graph.merge(&triplify_transmission(&assets)?);

    if config.options.materialize_spatial {
        report.spatial = Some(materialize_spatial_relations(&mut graph, reg));
    }
    if config.options.subclass_closure {
        report.closure_added = materialize_subclass_closure(&mut graph, reg);
    }
    if config.options.include_schema {
        graph.merge(&schema_graph(reg));
    }
    report.violations = validate_instances(&graph, reg);
    report.class_counts = class_counts(&graph);
    report.triples = graph.len();
    Ok(IngestOutput { graph, report })
}

/// Instances per registry class, in registry order, omitting empty classes.
pub(crate) fn class_counts(graph: &Graph) -> Vec<(String, usize)> {
    let reg = registry();
    let ty = rdf_type();
    reg.classes()
        .iter()
        .filter_map(|c| {
            let n = graph.count(None, Some(&ty), Some(&Term::Iri(c.iri.clone())));
            (n > 0).then(|| (reg.prefixes().compact_iri(&c.iri), n))
        })
        .collect()
}
