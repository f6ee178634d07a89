//! Geospatial knowledge-graph toolkit for electric-vehicle data: an RDF store,
//! planar topology, the EV ontology, CSV triplification, spatial
//! materialization and a SPARQL-subset query engine.

pub mod cq;
pub mod geometry;
pub mod ingest;
pub mod materialize;
pub mod query;
pub mod rdf;
pub mod stats;
pub mod vocabulary;

pub use geometry::{parse_wkt, to_wkt, Geometry, GeometryError};
pub use query::{evaluate, parse_query, QueryError, Solutions};
pub use rdf::{Graph, Iri, Literal, RdfError, Term, Triple};
pub use vocabulary::{registry, OntologyRegistry};
