//! The EV knowledge-graph ontology as a registry of classes and properties,
//! plus the shared charger/connector individuals the data links to.

mod evkg;
mod individuals;
mod schema;
mod validate;

pub use evkg::registry;
pub use individuals::{individuals_graph, ChargerLevel, ConnectorKind};
pub use schema::schema_graph;
pub use validate::{validate_instances, Violation};

use std::collections::{BTreeMap, BTreeSet};

use crate::rdf::{iri, vocab, Iri, PrefixTable};

/// Namespace IRIs of the ontology and its instance data.
pub mod ns {
    pub const EV_ONT: &str = "http://evkg.org/ontology/";
    pub const EVR: &str = "http://evkg.org/resource/";
    pub const KWG_ONT: &str = "http://stko-kwg.geog.ucsb.edu/lod/ontology/";
    pub const KWGR: &str = "http://stko-kwg.geog.ucsb.edu/lod/resource/";
    pub const GEO: &str = "http://www.opengis.net/ont/geosparql#";
    pub const SF: &str = "http://www.opengis.net/ont/sf#";
    pub const GEO_WKT_LITERAL: &str = "http://www.opengis.net/ont/geosparql#wktLiteral";
}

/// `ev-ont:` term.
pub fn ev(local: &str) -> Iri {
    iri(&format!("{}{local}", ns::EV_ONT))
}

/// `evr:` resource.
pub fn evr(local: &str) -> Iri {
    iri(&format!("{}{local}", ns::EVR))
}

pub fn kwg(local: &str) -> Iri {
    iri(&format!("{}{local}", ns::KWG_ONT))
}

pub fn geo(local: &str) -> Iri {
    iri(&format!("{}{local}", ns::GEO))
}

pub fn sf(local: &str) -> Iri {
    iri(&format!("{}{local}", ns::SF))
}

pub fn rdf_type() -> Iri {
    iri(vocab::RDF_TYPE)
}

pub fn rdfs_label() -> Iri {
    iri(vocab::RDFS_LABEL)
}

pub fn xsd(local: &str) -> Iri {
    iri(&format!("{}{local}", vocab::XSD))
}

/// Prefixes used by the ontology, the instance data and the bundled queries.
pub fn default_prefixes() -> PrefixTable {
    let mut t = PrefixTable::new();
    for (prefix, namespace) in [
        ("ev-ont", ns::EV_ONT),
        ("evr", ns::EVR),
        ("kwg-ont", ns::KWG_ONT),
        ("kwgr", ns::KWGR),
        ("geo", ns::GEO),
        ("sf", ns::SF),
        ("rdf", vocab::RDF),
        ("rdfs", vocab::RDFS),
        ("owl", vocab::OWL),
        ("xsd", vocab::XSD),
    ] {
        t.insert(prefix, iri(namespace));
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleTag {
    Adoption,
    Charging,
    Transmission,
    External,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassDef {
    pub iri: Iri,
    pub label: String,
    pub super_classes: Vec<Iri>,
    pub module: ModuleTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropertyKind {
    Object,
    Datatype,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyDef {
    pub iri: Iri,
    pub kind: PropertyKind,
    pub domain: Option<Iri>,
    /// A class for object properties, an XSD (or WKT) datatype for datatype properties.
    pub range: Option<Iri>,
    pub label: String,
    pub module: ModuleTag,
}

#[derive(Clone, Debug)]
pub struct OntologyRegistry {
    classes: Vec<ClassDef>,
    properties: Vec<PropertyDef>,
    prefixes: PrefixTable,
    class_index: BTreeMap<Iri, usize>,
    property_index: BTreeMap<Iri, usize>,
}

/// Datatypes a datatype property may range over.
pub fn is_known_datatype(dt: &Iri) -> bool {
    dt.as_str().starts_with(vocab::XSD) || dt.as_str() == ns::GEO_WKT_LITERAL
}

impl OntologyRegistry {
    /// Builds a registry and checks its invariants.
    pub fn new(
        classes: Vec<ClassDef>,
        properties: Vec<PropertyDef>,
        prefixes: PrefixTable,
    ) -> Result<Self, Vec<String>> {
        let mut problems = Vec::new();
        let mut class_index = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            if class_index.insert(c.iri.clone(), i).is_some() {
                problems.push(format!("duplicate class {}", c.iri));
            }
        }
        let mut property_index = BTreeMap::new();
        for (i, p) in properties.iter().enumerate() {
            if property_index.insert(p.iri.clone(), i).is_some() || class_index.contains_key(&p.iri) {
                problems.push(format!("duplicate term {}", p.iri));
            }
        }
        let reg = OntologyRegistry {
            classes,
            properties,
            prefixes,
            class_index,
            property_index,
        };
        problems.extend(reg.check());
        if problems.is_empty() {
            Ok(reg)
        } else {
            Err(problems)
        }
    }

    fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for c in &self.classes {
            for s in &c.super_classes {
                if !self.class_index.contains_key(s) {
                    problems.push(format!("{} has unregistered super class {}", c.iri, s));
                }
            }
            let native = c.iri.as_str().starts_with(ns::EV_ONT);
            if !native && c.module != ModuleTag::External {
                problems.push(format!("{} is not an ev-ont class but is not tagged external", c.iri));
            }
        }
        if let Some(cycle_at) = self.find_cycle() {
            problems.push(format!("subclass cycle through {cycle_at}"));
        }
        for p in &self.properties {
            if let Some(d) = &p.domain {
                if !self.class_index.contains_key(d) {
                    problems.push(format!("{} has unregistered domain {}", p.iri, d));
                }
            }
            if let Some(r) = &p.range {
                let ok = match p.kind {
                    PropertyKind::Object => self.class_index.contains_key(r),
                    PropertyKind::Datatype => is_known_datatype(r),
                };
                if !ok {
                    problems.push(format!("{} has unresolvable range {}", p.iri, r));
                }
            }
        }
        problems
    }

    fn find_cycle(&self) -> Option<Iri> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.classes.len()];
        fn visit(reg: &OntologyRegistry, i: usize, state: &mut [u8]) -> Option<Iri> {
            match state[i] {
                1 => return Some(reg.classes[i].iri.clone()),
                2 => return None,
                _ => {}
            }
            state[i] = 1;
            for s in &reg.classes[i].super_classes {
                if let Some(&j) = reg.class_index.get(s) {
                    if let Some(found) = visit(reg, j, state) {
                        return Some(found);
                    }
                }
            }
            state[i] = 2;
            None
        }
        (0..self.classes.len()).find_map(|i| visit(self, i, &mut state))
    }

    pub fn classes(&self) -> &[ClassDef] {
        &self.classes
    }

    pub fn properties(&self) -> &[PropertyDef] {
        &self.properties
    }

    pub fn prefixes(&self) -> &PrefixTable {
        &self.prefixes
    }

    pub fn class(&self, iri: &Iri) -> Option<&ClassDef> {
        self.class_index.get(iri).map(|&i| &self.classes[i])
    }

    pub fn property(&self, iri: &Iri) -> Option<&PropertyDef> {
        self.property_index.get(iri).map(|&i| &self.properties[i])
    }

    /// Whether the IRI names any registered class or property.
    pub fn resolves(&self, iri: &Iri) -> bool {
        self.class_index.contains_key(iri) || self.property_index.contains_key(iri)
    }

    /// All registered super classes of `class`, transitively, excluding itself.
    pub fn ancestors(&self, class: &Iri) -> BTreeSet<Iri> {
        let mut out = BTreeSet::new();
        let mut stack = vec![class.clone()];
        while let Some(c) = stack.pop() {
            if let Some(def) = self.class(&c) {
                for s in &def.super_classes {
                    if out.insert(s.clone()) {
                        stack.push(s.clone());
                    }
                }
            }
        }
        out
    }

    /// Reflexive-transitive subclass test.
    pub fn is_subclass_of(&self, class: &Iri, ancestor: &Iri) -> bool {
        class == ancestor || self.ancestors(class).contains(ancestor)
    }
}
