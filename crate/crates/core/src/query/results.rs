use serde_json::{json, Map, Value as Json};

use super::ast::Variable;
use crate::rdf::Term;

/// A multiset of solutions over a fixed list of variables. `None` is unbound.
#[derive(Clone, Debug, PartialEq)]
pub struct Solutions {
    pub variables: Vec<Variable>,
    pub rows: Vec<Vec<Option<Term>>>,
}

impl Solutions {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name() == name)
    }

    /// Values of one variable across all rows.
    pub fn column(&self, name: &str) -> Vec<Option<&Term>> {
        match self.column_index(name) {
            Some(i) => self.rows.iter().map(|r| r[i].as_ref()).collect(),
            None => Vec::new(),
        }
    }

    fn rendered_rows(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.as_ref().map(Term::to_ntriples).unwrap_or_default())
                    .collect::<Vec<_>>()
                    .join("\t")
            })
            .collect();
        lines.sort();
        lines
    }

    /// Header of `?var` names, then one line per row in sorted order; terms in
    /// N-Triples form, unbound cells empty.
    pub fn to_tsv(&self) -> String {
        let header: Vec<String> = self.variables.iter().map(|v| v.to_string()).collect();
        let mut out = header.join("\t");
        out.push('\n');
        for line in self.rendered_rows() {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// SPARQL JSON results, rows in the same order as the TSV form.
    pub fn to_json(&self) -> String {
        let mut rows: Vec<&Vec<Option<Term>>> = self.rows.iter().collect();
        let key = |r: &Vec<Option<Term>>| {
            r.iter()
                .map(|c| c.as_ref().map(Term::to_ntriples).unwrap_or_default())
                .collect::<Vec<_>>()
                .join("\t")
        };
        rows.sort_by_cached_key(|r| key(r));
        let bindings: Vec<Json> = rows
            .into_iter()
            .map(|row| {
                let mut obj = Map::new();
                for (v, cell) in self.variables.iter().zip(row) {
                    if let Some(t) = cell {
                        obj.insert(v.name().to_owned(), term_json(t));
                    }
                }
                Json::Object(obj)
            })
            .collect();
        let vars: Vec<&str> = self.variables.iter().map(Variable::name).collect();
        let doc = json!({ "head": { "vars": vars }, "results": { "bindings": bindings } });
        serde_json::to_string_pretty(&doc).expect("results serialize") + "\n"
    }
}

fn term_json(t: &Term) -> Json {
    match t {
        Term::Iri(i) => json!({ "type": "uri", "value": i.as_str() }),
        Term::Blank(b) => json!({ "type": "bnode", "value": b.label() }),
        Term::Literal(l) => {
            let mut obj = Map::new();
            obj.insert("type".into(), json!("literal"));
            obj.insert("value".into(), json!(l.lexical()));
            if let Some(lang) = l.language() {
                obj.insert("xml:lang".into(), json!(lang));
            } else if !l.is_plain_string() {
                obj.insert("datatype".into(), json!(l.datatype().as_str()));
            }
            Json::Object(obj)
        }
    }
}
