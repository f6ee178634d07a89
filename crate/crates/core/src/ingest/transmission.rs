use super::records::{AssetKind, TransmissionAssetRecord};
use super::{add_geometry, sanitize, IngestError};
use crate::geometry::Dimension;
use crate::rdf::{Graph, Iri, Literal};
use crate::vocabulary::{ev, evr, rdf_type, rdfs_label};

fn attribute(g: &mut Graph, kind: &str, class: &str, label: &str) -> Result<Iri, IngestError> {
    let node = evr(&format!("{kind}.{}", sanitize(label)));
    g.add(node.clone(), &rdf_type(), ev(class))?;
    g.add(node.clone(), &rdfs_label(), Literal::string(label))?;
    Ok(node)
}

fn asset_triples(g: &mut Graph, r: &TransmissionAssetRecord) -> Result<(), IngestError> {
    let (expected, kind_word, class, status_prop) = match r.kind {
        AssetKind::Line => (Dimension::Lineal, "transmissionline", "TransmissionLine", "hasLineStatus"),
        AssetKind::Substation => (Dimension::Puntal, "substation", "Substation", "hasStationStatus"),
        AssetKind::Plant => (Dimension::Puntal, "powerplant", "PowerPlant", "hasPlantStatus"),
    };
    if r.geometry.dimension() != expected {
        return Err(IngestError::GeometryKind {
            asset_id: r.asset_id.clone(),
            kind: r.kind.name(),
            expected: if expected == Dimension::Lineal { "line" } else { "point" },
            found: r.geometry.kind(),
        });
    }
    let a = evr(&format!("{kind_word}.{}", sanitize(&r.asset_id)));
    g.add(a.clone(), &rdf_type(), ev(class))?;
    add_geometry(g, &a, &r.geometry)?;

    if let Some(status) = &r.status {
        let s = attribute(g, "servingstatus", "ServingStatus", status)?;
        g.add(a.clone(), &ev(status_prop), s)?;
    }
    match r.kind {
        AssetKind::Line => {
            if let Some(vc) = &r.voltage_class {
                let v = attribute(g, "voltageclass", "VoltageClass", vc)?;
                g.add(a.clone(), &ev("hasVoltageClass"), v)?;
            }
            if let Some(owner) = &r.owner {
                let o = attribute(g, "lineowner", "TransmissionLineOwner", owner)?;
                g.add(a.clone(), &ev("hasLineOwner"), o)?;
            }
        }
        AssetKind::Substation => {
            for (prop, value) in [("hasMinVoltage", r.min_voltage_kv), ("hasMaxVoltage", r.max_voltage_kv)] {
                if let Some(v) = value {
                    g.add(a.clone(), &ev(prop), Literal::decimal(v))?;
                }
            }
        }
        AssetKind::Plant => {
            for (prop, value) in [
                ("hasSummerCapacity", r.summer_mw),
                ("hasWinterCapacity", r.winter_mw),
                ("hasOperatingCapacity", r.operating_mw),
            ] {
                if let Some(v) = value {
                    g.add(a.clone(), &ev(prop), Literal::decimal(v))?;
                }
            }
        }
    }
    Ok(())
}

/// Lines, substations and plants as features. A record whose geometry does
/// not fit its kind is an error.
pub fn triplify_transmission(records: &[TransmissionAssetRecord]) -> Result<Graph, IngestError> {
    let mut g = Graph::new();
    for r in records {
        asset_triples(&mut g, r)?;
    }
    Ok(g)
}
