use super::{rdf_type, rdfs_label, OntologyRegistry, PropertyKind};
use crate::rdf::{iri, vocab, Graph, Iri, Literal, Term};

/// Schema triples for every registered class and property.
pub fn schema_graph(registry: &OntologyRegistry) -> Graph {
    let mut g = Graph::with_prefixes(registry.prefixes().clone());
    let (ty, label) = (rdf_type(), rdfs_label());
    let sub = iri(vocab::RDFS_SUBCLASS_OF);
    let domain = iri(vocab::RDFS_DOMAIN);
    let range = iri(vocab::RDFS_RANGE);
    fn add(g: &mut Graph, s: Iri, p: &Iri, o: Term) {
        g.add(s, p, o).expect("IRI subjects are always valid");
    }
    for c in registry.classes() {
        add(&mut g, c.iri.clone(), &ty, iri(vocab::OWL_CLASS).into());
        add(&mut g, c.iri.clone(), &label, Literal::string(&c.label).into());
        for s in &c.super_classes {
            add(&mut g, c.iri.clone(), &sub, s.clone().into());
        }
    }
    for p in registry.properties() {
        let kind = match p.kind {
            PropertyKind::Object => vocab::OWL_OBJECT_PROPERTY,
            PropertyKind::Datatype => vocab::OWL_DATATYPE_PROPERTY,
        };
        add(&mut g, p.iri.clone(), &ty, iri(kind).into());
        add(&mut g, p.iri.clone(), &label, Literal::string(&p.label).into());
        if let Some(d) = &p.domain {
            add(&mut g, p.iri.clone(), &domain, d.clone().into());
        }
        if let Some(r) = &p.range {
            add(&mut g, p.iri.clone(), &range, r.clone().into());
        }
    }
    g
}
