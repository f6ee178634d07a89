use std::sync::OnceLock;

use super::{
    default_prefixes, ev, geo, kwg, ns, sf, xsd, ClassDef, ModuleTag, OntologyRegistry, PropertyDef,
    PropertyKind,
};
use crate::rdf::{iri, vocab, Iri};

use ModuleTag::{Adoption, Charging, External, Transmission};
use PropertyKind::{Datatype, Object};

fn class(iri: Iri, label: &str, supers: &[Iri], module: ModuleTag) -> ClassDef {
    ClassDef {
        iri,
        label: label.to_owned(),
        super_classes: supers.to_vec(),
        module,
    }
}

fn prop(
    iri: Iri,
    kind: PropertyKind,
    domain: Option<Iri>,
    range: Option<Iri>,
    label: &str,
    module: ModuleTag,
) -> PropertyDef {
    PropertyDef {
        iri,
        kind,
        domain,
        range,
        label: label.to_owned(),
        module,
    }
}

fn classes() -> Vec<ClassDef> {
    let feature = geo("Feature");
    let geometry = geo("Geometry");
    let station = ev("ChargingStation");
    let attribute = ev("LineAttribute");
    let mut out = vec![
        class(feature.clone(), "Feature", &[], External),
        class(geometry.clone(), "Geometry", &[], External),
        class(kwg("ZipCodeArea"), "Zip Code Area", std::slice::from_ref(&feature), External),
        class(kwg("AdministrativeRegion_2"), "Administrative Region (level 2)", std::slice::from_ref(&feature), External),
        class(kwg("AdministrativeRegion_3"), "Administrative Region (level 3)", std::slice::from_ref(&feature), External),
        class(kwg("RoadSegment"), "Road Segment", std::slice::from_ref(&feature), External),
    ];
    for kind in ["Point", "MultiPoint", "LineString", "MultiLineString", "Polygon", "MultiPolygon"] {
        out.push(class(sf(kind), kind, std::slice::from_ref(&geometry), External));
    }

    for (local, label) in [
        ("ElectricVehicleRegistrationCollection", "Electric Vehicle Registration Collection"),
        ("ElectricVehicleProduct", "Electric Vehicle Product"),
        ("MakeType", "Make Type"),
        ("ModelType", "Model Type"),
        ("Technology", "Technology"),
        ("Manufacturer", "Manufacturer"),
        ("VehicleUseCase", "Vehicle Use Case"),
        ("WeightLevel", "Weight Level"),
        ("ChargerType", "Charger Type"),
        ("ConnectorType", "Connector Type"),
    ] {
        out.push(class(ev(local), label, &[], Adoption));
    }

    out.push(class(station.clone(), "Charging Station", std::slice::from_ref(&feature), Charging));
    for (local, label) in [
        ("PublicChargingStation", "Public Charging Station"),
        ("PrivateChargingStation", "Private Charging Station"),
        ("NetworkedChargingStation", "Networked Charging Station"),
        ("NonNetworkedChargingStation", "Non-Networked Charging Station"),
    ] {
        out.push(class(ev(local), label, std::slice::from_ref(&station), Charging));
    }
    for (local, label) in [
        ("ChargerCollection", "Charger Collection"),
        ("ChargingNetwork", "Charging Network"),
        ("ChargingUserGroup", "Charging User Group"),
    ] {
        out.push(class(ev(local), label, &[], Charging));
    }

    for (local, label) in [
        ("PowerPlant", "Power Plant"),
        ("TransmissionLine", "Transmission Line"),
        ("Substation", "Substation"),
    ] {
        out.push(class(ev(local), label, std::slice::from_ref(&feature), Transmission));
    }
    out.push(class(attribute.clone(), "Line Attribute", &[], Transmission));
    for (local, label) in [
        ("VoltageClass", "Voltage Class"),
        ("ServingStatus", "Serving Status"),
        ("TransmissionLineOwner", "Transmission Line Owner"),
    ] {
        out.push(class(ev(local), label, std::slice::from_ref(&attribute), Transmission));
    }
    out
}

fn properties() -> Vec<PropertyDef> {
    let coll = Some(ev("ElectricVehicleRegistrationCollection"));
    let product = Some(ev("ElectricVehicleProduct"));
    let station = Some(ev("ChargingStation"));
    let chargers = Some(ev("ChargerCollection"));
    let plant = Some(ev("PowerPlant"));
    let substation = Some(ev("Substation"));
    let line = Some(ev("TransmissionLine"));
    let feature = Some(geo("Feature"));
    let string = Some(xsd("string"));
    let gyear = Some(xsd("gYear"));
    let decimal = Some(xsd("decimal"));
    let status = Some(ev("ServingStatus"));

    vec![
        // adoption
        prop(ev("hasSpatialScope"), Object, coll.clone(), Some(kwg("ZipCodeArea")), "has spatial scope", Adoption),
        prop(ev("hasTemporalScope"), Datatype, coll.clone(), gyear.clone(), "has temporal scope", Adoption),
        prop(ev("hasProductInfo"), Object, coll, product.clone(), "has product info", Adoption),
        prop(ev("hasAmount"), Datatype, None, Some(xsd("integer")), "has amount", Adoption),
        prop(ev("hasModelYear"), Datatype, None, gyear.clone(), "has model year", Adoption),
        prop(ev("isWithTechnology"), Object, product.clone(), Some(ev("Technology")), "is with technology", Adoption),
        prop(ev("hasMatchableChargerType"), Object, product.clone(), Some(ev("ChargerType")), "has matchable charger type", Adoption),
        prop(ev("hasMatchableConnectorType"), Object, product.clone(), Some(ev("ConnectorType")), "has matchable connector type", Adoption),
        prop(ev("hasModelType"), Object, product.clone(), Some(ev("ModelType")), "has model type", Adoption),
        prop(ev("hasMakeType"), Object, product.clone(), Some(ev("MakeType")), "has make type", Adoption),
        prop(ev("hasManufacturer"), Object, product.clone(), Some(ev("Manufacturer")), "has manufacturer", Adoption),
        prop(ev("hasVehicleUseCase"), Object, product.clone(), Some(ev("VehicleUseCase")), "has vehicle use case", Adoption),
        prop(ev("hasWeightLevel"), Object, product, Some(ev("WeightLevel")), "has weight level", Adoption),
        // charging
        prop(ev("hosts"), Object, station.clone(), chargers.clone(), "hosts", Charging),
        prop(ev("hasConnectorType"), Object, chargers.clone(), Some(ev("ConnectorType")), "has connector type", Charging),
        prop(ev("hasChargerType"), Object, chargers, Some(ev("ChargerType")), "has charger type", Charging),
        prop(ev("hasOpenTime"), Datatype, station.clone(), Some(xsd("date")), "has open time", Charging),
        prop(ev("hasOpenYear"), Datatype, station.clone(), gyear, "has open year", Charging),
        prop(ev("hasOperatingHours"), Datatype, station.clone(), string.clone(), "has operating hours", Charging),
        prop(ev("hasParkingRestriction"), Datatype, station.clone(), string.clone(), "has parking restriction", Charging),
        prop(ev("hasPricingScheme"), Datatype, station, string.clone(), "has pricing scheme", Charging),
        prop(
            ev("isUnderChargingNetwork"),
            Object,
            Some(ev("NetworkedChargingStation")),
            Some(ev("ChargingNetwork")),
            "is under charging network",
            Charging,
        ),
        prop(
            ev("hasChargingUserGroup"),
            Object,
            Some(ev("PrivateChargingStation")),
            Some(ev("ChargingUserGroup")),
            "has charging user group",
            Charging,
        ),
        // transmission
        prop(ev("hasSummerCapacity"), Datatype, plant.clone(), decimal.clone(), "has summer capacity", Transmission),
        prop(ev("hasWinterCapacity"), Datatype, plant.clone(), decimal.clone(), "has winter capacity", Transmission),
        prop(ev("hasOperatingCapacity"), Datatype, plant.clone(), decimal.clone(), "has operating capacity", Transmission),
        prop(ev("hasMinVoltage"), Datatype, substation.clone(), decimal.clone(), "has min voltage", Transmission),
        prop(ev("hasMaxVoltage"), Datatype, substation.clone(), decimal, "has max voltage", Transmission),
        prop(ev("hasLineStatus"), Object, line.clone(), status.clone(), "has line status", Transmission),
        prop(ev("hasPlantStatus"), Object, plant, status.clone(), "has plant status", Transmission),
        prop(ev("hasStationStatus"), Object, substation, status, "has station status", Transmission),
        prop(ev("hasVoltageClass"), Object, line.clone(), Some(ev("VoltageClass")), "has voltage class", Transmission),
        prop(ev("hasLineOwner"), Object, line, Some(ev("TransmissionLineOwner")), "has line owner", Transmission),
        // reused vocabularies
        prop(kwg("sfWithin"), Object, feature.clone(), feature.clone(), "sf within", External),
        prop(kwg("sfContains"), Object, feature.clone(), feature.clone(), "sf contains", External),
        prop(kwg("sfCrosses"), Object, feature.clone(), feature.clone(), "sf crosses", External),
        prop(geo("hasGeometry"), Object, feature, Some(geo("Geometry")), "has geometry", External),
        prop(geo("asWKT"), Datatype, Some(geo("Geometry")), Some(iri(ns::GEO_WKT_LITERAL)), "as WKT", External),
        prop(iri(vocab::RDFS_LABEL), Datatype, None, string, "label", External),
        prop(iri(vocab::RDFS_SUBCLASS_OF), Object, None, None, "subClassOf", External),
        prop(iri(vocab::OWL_SAME_AS), Object, None, None, "sameAs", External),
        prop(iri(vocab::RDF_TYPE), Object, None, None, "type", External),
    ]
}

/// The EVKG ontology. Built once; invariant violations panic, which the unit
/// tests turn into build-time failures.
pub fn registry() -> &'static OntologyRegistry {
    static REGISTRY: OnceLock<OntologyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        OntologyRegistry::new(classes(), properties(), default_prefixes())
            .unwrap_or_else(|problems| panic!("invalid ontology registry: {problems:?}"))
    })
}
