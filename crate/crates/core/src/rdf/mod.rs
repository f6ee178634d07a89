//! RDF data model: terms, an indexed in-memory triple set, prefix tables and
//! the N-Triples / Turtle-subset text formats.

mod graph;
mod lexer;
mod ntriples;
mod prefix;
mod term;
mod turtle;

pub use graph::Graph;
pub use ntriples::{parse_ntriples, serialize_ntriples};
pub use prefix::PrefixTable;
pub(crate) use prefix::is_valid_prefix;
pub use term::{format_decimal, BlankNode, Iri, Literal, Numeric, Term, Triple};
pub use turtle::{parse_turtle, serialize_turtle};

use thiserror::Error;

/// Core W3C namespace IRIs used by the data model itself.
pub mod vocab {
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

    pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
    pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
    pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
    pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";

    pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const XSD_GYEAR: &str = "http://www.w3.org/2001/XMLSchema#gYear";
    pub const XSD_DATE: &str = "http://www.w3.org/2001/XMLSchema#date";
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RdfError {
    #[error("invalid IRI {value:?}: {reason}")]
    InvalidIri { value: String, reason: &'static str },
    #[error("invalid literal {lexical:?}: {reason}")]
    InvalidLiteral { lexical: String, reason: String },
    #[error("invalid blank node label {0:?}")]
    InvalidBlankNode(String),
    #[error("literal {0} cannot be used as a triple subject")]
    LiteralSubject(String),
    #[error("unknown prefix {0:?}")]
    UnknownPrefix(String),
    #[error("not a prefixed name: {0:?}")]
    NotACurie(String),
    #[error("syntax error on line {line} at {token:?}: {message}")]
    Syntax {
        line: usize,
        token: String,
        message: String,
    },
}

/// Shorthand used throughout the crate for IRIs known to be valid at compile time.
pub(crate) fn iri(value: &str) -> Iri {
    Iri::new(value).unwrap_or_else(|e| panic!("static IRI {value:?} rejected: {e}"))
}
