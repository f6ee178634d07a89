//! A SPARQL subset: basic graph patterns, groups, `UNION`, `FILTER`,
//! `VALUES`, sub-selects, `DISTINCT`, `GROUP BY` and `SUM`.

mod ast;
mod eval;
mod expr;
mod lexer;
mod listings;
mod parser;
mod results;

pub use ast::{
    ArithOp, CompareOp, Expression, GraphPattern, Projection, Query, SelectItem, TermPattern,
    TriplePattern, ValuesTable, Variable,
};
pub use eval::{evaluate, Binding};
pub use listings::{
    evaluate_federated_listing, evaluate_listing, expand_listing, listing_query, listing_source,
    FEDERATED_LISTINGS,
};
pub use parser::parse_query;
pub use results::Solutions;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported construct {construct} at line {line}, column {column}")]
    Unsupported { construct: String, line: usize, column: usize },
    #[error("unknown prefix {prefix:?} at line {line}, column {column}")]
    UnknownPrefix { prefix: String, line: usize, column: usize },
    #[error("unknown listing {0}")]
    UnknownListing(u8),
}

/// Parses and evaluates query text in one step.
pub fn run_query(graph: &crate::rdf::Graph, text: &str) -> Result<Solutions, QueryError> {
    Ok(evaluate(graph, &parse_query(text)?))
}
