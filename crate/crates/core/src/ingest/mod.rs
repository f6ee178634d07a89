//! Triplification of the flat-file inputs: EV registrations, charging
//! stations, transmission assets and the zip/county/state hierarchy.

mod adoption;
mod pipeline;
mod places;
mod records;
mod stations;
mod transmission;

pub use adoption::{aggregate_registrations, triplify_adoption, Aggregation, ProductCatalog, ProductKey, RegistrationCollection};
pub use pipeline::{ingest, load_config, IngestConfig, IngestOutput, IngestReport, Inputs, Options};
pub use places::triplify_places;
pub use records::{
    read_places, read_registrations, read_stations, read_transmission, Access, AssetKind, ChargerGroup, Loaded,
    RegistrationRecord, RowIssue, StationRecord, Technology, TransmissionAssetRecord, ZipAreaRecord,
};
pub use stations::triplify_stations;
pub use transmission::triplify_transmission;

use std::path::PathBuf;

use thiserror::Error;

use crate::geometry::{to_wkt, Geometry};
use crate::rdf::{iri, Graph, Iri, Literal, RdfError};
use crate::vocabulary::{geo, ns, sf};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{source_name}: {source}")]
    Csv {
        source_name: String,
        #[source]
        source: csv::Error,
    },
    #[error("invalid config {}: {message}", path.display())]
    Config { path: PathBuf, message: String },
    #[error("unknown {kind} token {token:?} in {record}")]
    UnknownToken {
        kind: &'static str,
        token: String,
        record: String,
    },
    #[error("asset {asset_id}: a {kind} needs {expected} geometry, found {found}")]
    GeometryKind {
        asset_id: String,
        kind: &'static str,
        expected: &'static str,
        found: &'static str,
    },
    #[error("duplicate zip code {0}")]
    DuplicateZip(String),
    #[error("no product individual for: {}", .0.join("; "))]
    DanglingProducts(Vec<String>),
    #[error("IRI {iri} minted for two different keys: {first} / {second}")]
    IriCollision { iri: String, first: String, second: String },
    #[error(transparent)]
    Rdf(#[from] RdfError),
}

/// Replaces every character outside `[A-Za-z0-9]` with `_` so the result is
/// safe inside a prefixed-name local part.
pub fn sanitize(text: &str) -> String {
    let s: String = text
        .trim()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let s = s.trim_matches('_');
    if s.is_empty() {
        "x".to_owned()
    } else {
        s.to_owned()
    }
}

pub fn wkt_literal(g: &Geometry) -> Literal {
    Literal::typed(to_wkt(g), iri(ns::GEO_WKT_LITERAL)).expect("WKT literals carry no lexical constraint")
}

/// Attaches `evr:geometry.<feature local name>` with its simple-features type and WKT.
pub(crate) fn add_geometry(g: &mut Graph, feature: &Iri, geometry: &Geometry) -> Result<(), RdfError> {
    let local = feature.as_str().strip_prefix(ns::EVR).unwrap_or(feature.as_str());
    let node = crate::vocabulary::evr(&format!("geometry.{}", sanitize_path(local)));
    g.add(feature.clone(), &geo("hasGeometry"), node.clone())?;
    g.add(node.clone(), &crate::vocabulary::rdf_type(), sf(geometry.kind()))?;
    g.add(node, &geo("asWKT"), wkt_literal(geometry))?;
    Ok(())
}

/// Like [`sanitize`] but keeps dots, for already-minted dotted local names.
fn sanitize_path(local: &str) -> String {
    local.split('.').map(sanitize).collect::<Vec<_>>().join(".")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sanitizing() {
        assert_eq!(sanitize("BMW of North America, Inc."), "BMW_of_North_America__Inc");
        assert_eq!(sanitize("  "), "x");
        assert_eq!(sanitize("500"), "500");
    }
}
