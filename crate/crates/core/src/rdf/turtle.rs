use super::ntriples::StatementReader;
use super::{Graph, Iri, PrefixTable, RdfError, Term};

fn turtle_term(term: &Term, prefixes: &PrefixTable) -> String {
    match term {
        Term::Iri(iri) => prefixes.compact_iri(iri),
        Term::Literal(lit) if lit.language().is_none() && !lit.is_plain_string() => {
            let full = lit.to_ntriples();
            let suffix = format!("^^{}", lit.datatype());
            let quoted = &full[..full.len() - suffix.len()];
            format!("{quoted}^^{}", prefixes.compact_iri(lit.datatype()))
        }
        other => other.to_ntriples(),
    }
}

fn turtle_predicate(iri: &Iri, prefixes: &PrefixTable) -> String {
    prefixes.compact_iri(iri)
}

/// Turtle subset: a sorted `@prefix` header followed by one full triple per
/// line, sorted, with prefixed names wherever the local part allows it.
pub fn serialize_turtle(graph: &Graph, prefixes: &PrefixTable) -> String {
    let mut out = String::new();
    for (prefix, ns) in prefixes.iter() {
        out.push_str(&format!("@prefix {prefix}: {ns} .\n"));
    }
    if !prefixes.is_empty() {
        out.push('\n');
    }
    let mut lines: Vec<String> = graph
        .iter()
        .map(|t| {
            format!(
                "{} {} {} .",
                turtle_term(&t.subject, prefixes),
                turtle_predicate(&t.predicate, prefixes),
                turtle_term(&t.object, prefixes)
            )
        })
        .collect();
    lines.sort_unstable();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses the Turtle subset written by [`serialize_turtle`]: prefix
/// directives and full `s p o .` triples.
pub fn parse_turtle(text: &str) -> Result<Graph, RdfError> {
    let mut graph = Graph::new();
    let mut reader = StatementReader::new(text, Some(PrefixTable::new()));
    while let Some(triple) = reader.next_triple()? {
        graph.insert(triple)?;
    }
    if let Some(prefixes) = reader.into_prefixes() {
        *graph.prefixes_mut() = prefixes;
    }
    Ok(graph)
}
