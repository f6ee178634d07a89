use super::{evaluate, parse_query, Query, QueryError, Solutions};
use crate::rdf::Graph;

const SOURCES: [&str; 10] = [
    include_str!("../../queries/listing01.rq"),
    include_str!("../../queries/listing02.rq"),
    include_str!("../../queries/listing03.rq"),
    include_str!("../../queries/listing04.rq"),
    include_str!("../../queries/listing05.rq"),
    include_str!("../../queries/listing06.rq"),
    include_str!("../../queries/listing07.rq"),
    include_str!("../../queries/listing08.rq"),
    include_str!("../../queries/listing09.rq"),
    include_str!("../../queries/listing10.rq"),
];

/// Listings that embed other listings through placeholders.
pub const FEDERATED_LISTINGS: [u8; 4] = [6, 8, 9, 10];

/// Raw text of a bundled listing, placeholders included.
pub fn listing_source(id: u8) -> Result<&'static str, QueryError> {
    match id {
        1..=10 => Ok(SOURCES[usize::from(id) - 1]),
        _ => Err(QueryError::UnknownListing(id)),
    }
}

const FENCE: &str = "```";

/// Listing text with every ```` ``` Query from Listing N ``` ```` placeholder
/// replaced by the (recursively expanded) text of listing N.
pub fn expand_listing(id: u8) -> Result<String, QueryError> {
    expand_depth(id, 0)
}

fn expand_depth(id: u8, depth: usize) -> Result<String, QueryError> {
    if depth > SOURCES.len() {
        return Err(QueryError::UnknownListing(id));
    }
    let mut text = listing_source(id)?.to_owned();
    while let Some(start) = text.find(FENCE) {
        let inner_start = start + FENCE.len();
        let Some(len) = text[inner_start..].find(FENCE) else {
            break;
        };
        let inner = &text[inner_start..inner_start + len];
        let target = inner
            .trim()
            .strip_prefix("Query from Listing")
            .and_then(|n| n.trim().parse::<u8>().ok())
            .ok_or(QueryError::UnknownListing(0))?;
        let body = expand_depth(target, depth + 1)?;
        text.replace_range(start..inner_start + len + FENCE.len(), &format!("\n{}\n", body.trim_end()));
    }
    Ok(text)
}

/// Parsed form of a bundled listing after placeholder expansion.
pub fn listing_query(id: u8) -> Result<Query, QueryError> {
    parse_query(&expand_listing(id)?)
}

/// Evaluates any bundled listing.
pub fn evaluate_listing(graph: &Graph, id: u8) -> Result<Solutions, QueryError> {
    Ok(evaluate(graph, &listing_query(id)?))
}

/// Evaluates one of the composite listings (6, 8, 9, 10): each placeholder
/// becomes a sub-select of the referenced listing, joined on shared variables.
pub fn evaluate_federated_listing(graph: &Graph, id: u8) -> Result<Solutions, QueryError> {
    if !FEDERATED_LISTINGS.contains(&id) {
        return Err(QueryError::UnknownListing(id));
    }
    evaluate_listing(graph, id)
}
