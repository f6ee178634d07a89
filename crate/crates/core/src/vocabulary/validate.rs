use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{ns, rdf_type, OntologyRegistry, PropertyKind};
use crate::rdf::{vocab, Graph, Iri, Term};

/// A way the instance data disagrees with the ontology.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Object of an object property is a literal or typed outside the range.
    Range {
        subject: Term,
        property: Iri,
        object: Term,
        expected: Iri,
    },
    /// Value of a datatype property is not a literal of the declared datatype.
    Datatype {
        subject: Term,
        property: Iri,
        value: Term,
        expected: Iri,
    },
    UnknownClass { subject: Term, class: Iri },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Range {
                subject,
                property,
                object,
                expected,
            } => write!(
                f,
                "range violation: {} {} {} (expected an instance of {})",
                subject.to_ntriples(),
                property,
                object.to_ntriples(),
                expected
            ),
            Violation::Datatype {
                subject,
                property,
                value,
                expected,
            } => write!(
                f,
                "datatype violation: {} {} {} (expected {})",
                subject.to_ntriples(),
                property,
                value.to_ntriples(),
                expected
            ),
            Violation::UnknownClass { subject, class } => {
                write!(f, "unknown class: {} is typed {}", subject.to_ntriples(), class)
            }
        }
    }
}

fn datatype_matches(value: &Term, expected: &Iri) -> bool {
    let Some(lit) = value.as_literal() else {
        return false;
    };
    lit.datatype() == expected
        || (expected.as_str() == vocab::XSD_STRING && lit.datatype().as_str() == vocab::RDF_LANG_STRING)
}

/// Checks ranges, datatypes and `ev-ont:` class membership. Objects with no
/// `rdf:type` at all are not range violations (they may be typed elsewhere).
pub fn validate_instances(data: &Graph, registry: &OntologyRegistry) -> Vec<Violation> {
    let ty = rdf_type();
    let mut types: BTreeMap<Term, BTreeSet<Iri>> = BTreeMap::new();
    for t in data.matches(None, Some(&ty), None) {
        if let Some(c) = t.object.as_iri() {
            types.entry(t.subject.clone()).or_default().insert(c.clone());
        }
    }

    let mut out = Vec::new();
    for t in data.iter() {
        if t.predicate == ty {
            if let Some(c) = t.object.as_iri() {
                if c.as_str().starts_with(ns::EV_ONT) && registry.class(c).is_none() {
                    out.push(Violation::UnknownClass {
                        subject: t.subject.clone(),
                        class: c.clone(),
                    });
                }
            }
            continue;
        }
        let Some(def) = registry.property(&t.predicate) else {
            continue;
        };
        let Some(range) = &def.range else {
            continue;
        };
        match def.kind {
            PropertyKind::Object => {
                let ok = match &t.object {
                    Term::Literal(_) => false,
                    other => types
                        .get(other)
                        .is_none_or(|cs| cs.iter().any(|c| registry.is_subclass_of(c, range))),
                };
                if !ok {
                    out.push(Violation::Range {
                        subject: t.subject,
                        property: t.predicate,
                        object: t.object,
                        expected: range.clone(),
                    });
                }
            }
            PropertyKind::Datatype => {
                if !datatype_matches(&t.object, range) {
                    out.push(Violation::Datatype {
                        subject: t.subject,
                        property: t.predicate,
                        value: t.object,
                        expected: range.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out
}
