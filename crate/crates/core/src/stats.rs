//! Entity and statement counts in the layout of the EVKG statistics table.

use std::collections::BTreeSet;
use std::fmt;

use crate::rdf::{Graph, Term};
use crate::vocabulary::{ev, kwg, rdf_type, OntologyRegistry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsRow {
    pub label: &'static str,
    pub count: usize,
    /// Set for rows outside the toolkit's scope.
    pub out_of_scope: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsReport {
    pub rows: Vec<StatsRow>,
    pub statements: usize,
    /// Distinct IRIs in subject position typed by a registry class.
    pub entities: usize,
    pub properties: usize,
    pub classes: usize,
}

/// Subjects typed by `class` or any registered subclass of it.
fn count_typed(graph: &Graph, registry: &OntologyRegistry, class: &crate::rdf::Iri) -> usize {
    let mut subjects = BTreeSet::new();
    for c in registry.classes() {
        if registry.is_subclass_of(&c.iri, class) {
            subjects.extend(graph.subjects(&rdf_type(), &Term::Iri(c.iri.clone())));
        }
    }
    subjects.len()
}

pub fn compute_stats(graph: &Graph, registry: &OntologyRegistry) -> StatsReport {
    let mut rows = Vec::new();
    for (label, iri) in [
        ("ChargingStation", ev("ChargingStation")),
        ("ChargerCollection", ev("ChargerCollection")),
        ("ElectricVehicleRegistrationCollection", ev("ElectricVehicleRegistrationCollection")),
        ("ElectricVehicleProduct", ev("ElectricVehicleProduct")),
        ("TransmissionLine", ev("TransmissionLine")),
        ("Substation", ev("Substation")),
        ("PowerPlant", ev("PowerPlant")),
    ] {
        rows.push(StatsRow {
            label,
            count: count_typed(graph, registry, &iri),
            out_of_scope: false,
        });
    }
    rows.push(StatsRow {
        label: "RoadSegment",
        count: count_typed(graph, registry, &kwg("RoadSegment")),
        out_of_scope: true,
    });
    rows.push(StatsRow {
        label: "RoadSegmentNode",
        count: 0,
        out_of_scope: true,
    });

    let mut entities = BTreeSet::new();
    for t in graph.matches(None, Some(&rdf_type()), None) {
        let is_class = t.object.as_iri().is_some_and(|c| registry.class(c).is_some());
        if is_class && t.subject.as_iri().is_some() {
            entities.insert(t.subject);
        }
    }
    StatsReport {
        rows,
        statements: graph.len(),
        entities: entities.len(),
        properties: registry.properties().len(),
        classes: registry.classes().len(),
    }
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max(22);
        writeln!(f, "{:<width$}  {:>10}", "Class", "Entities")?;
        for r in &self.rows {
            let mark = if r.out_of_scope { " *" } else { "" };
            writeln!(f, "{:<width$}  {:>10}{mark}", r.label, r.count)?;
        }
        writeln!(f)?;
        writeln!(f, "{:<width$}  {:>10}", "Total number of statements", self.statements)?;
        writeln!(f, "{:<width$}  {:>10}", "Total number of entities", self.entities)?;
        writeln!(f, "{:<width$}  {:>10}", "Total number of properties", self.properties)?;
        writeln!(f, "{:<width$}  {:>10}", "Total number of classes", self.classes)?;
        writeln!(f)?;
        writeln!(f, "* the road-network subgraph is out of scope; only the RoadSegment class stub exists")
    }
}
