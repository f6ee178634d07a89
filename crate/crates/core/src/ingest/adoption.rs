use std::collections::{BTreeMap, BTreeSet};

use sha2::{Digest, Sha256};

use super::records::{is_year, is_zip, RegistrationRecord, RowIssue, Technology};
use super::{sanitize, IngestError};
use crate::rdf::{Graph, Iri, Literal};
use crate::vocabulary::{ev, evr, rdf_type, rdfs_label, ChargerLevel, ConnectorKind};

/// Full product identity of a registration: everything except the VIN prefix,
/// the zip and the registration year.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductKey {
    pub make: String,
    pub model: String,
    pub model_year: String,
    pub technology: Technology,
    pub manufacturer: String,
    pub use_case: String,
    pub weight_level: String,
    pub charger_types: BTreeSet<ChargerLevel>,
    pub connector_types: BTreeSet<ConnectorKind>,
}

impl ProductKey {
    fn canonical(&self) -> String {
        let chargers: Vec<&str> = self.charger_types.iter().map(|c| c.local_name()).collect();
        let connectors: Vec<&str> = self.connector_types.iter().map(|c| c.token()).collect();
        [
            self.make.as_str(),
            &self.model,
            &self.model_year,
            self.technology.code(),
            &self.manufacturer,
            &self.use_case,
            &self.weight_level,
            &chargers.join(";"),
            &connectors.join(";"),
        ]
        .join("|")
    }

    /// `"Make Model"`
    pub fn label(&self) -> String {
        format!("{} {}", self.make, self.model)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RegistrationCollection {
    pub zip: String,
    pub year: String,
    pub product: ProductKey,
    pub amount: u64,
}

#[derive(Clone, Debug)]
pub struct Aggregation {
    pub collections: Vec<RegistrationCollection>,
    pub skipped: Vec<RowIssue>,
}

fn product_key(r: &RegistrationRecord) -> Result<(String, String, ProductKey), String> {
    if r.vin8.chars().count() != 8 {
        return Err(format!("vin8 {:?} is not 8 characters", r.vin8));
    }
    if !is_zip(r.zip.trim()) {
        return Err(format!("zip {:?} is not five digits", r.zip));
    }
    for (name, year) in [("model_year", &r.model_year), ("registration_year", &r.registration_year)] {
        if !is_year(year.trim()) {
            return Err(format!("{name} {year:?} is not a 4-digit year"));
        }
    }
    if r.make.trim().is_empty() || r.model.trim().is_empty() {
        return Err("make and model are required".into());
    }
    let technology =
        Technology::parse(&r.technology).ok_or_else(|| format!("technology {:?} is not BEV or PHEV", r.technology))?;
    let charger_types = r
        .charger_types
        .iter()
        .map(|t| ChargerLevel::parse(t).ok_or_else(|| format!("unknown charger type {t:?}")))
        .collect::<Result<_, _>>()?;
    let connector_types = r
        .connector_types
        .iter()
        .map(|t| ConnectorKind::parse(t).ok_or_else(|| format!("unknown connector type {t:?}")))
        .collect::<Result<_, _>>()?;
    let key = ProductKey {
        make: r.make.trim().to_owned(),
        model: r.model.trim().to_owned(),
        model_year: r.model_year.trim().to_owned(),
        technology,
        manufacturer: r.manufacturer.trim().to_owned(),
        use_case: r.use_case.trim().to_owned(),
        weight_level: r.weight_level.trim().to_owned(),
        charger_types,
        connector_types,
    };
    Ok((r.zip.trim().to_owned(), r.registration_year.trim().to_owned(), key))
}

/// Groups registrations by (zip, registration year, product). Rows that break
/// a record invariant are skipped and reported by 1-based position.
pub fn aggregate_registrations(records: &[RegistrationRecord]) -> Aggregation {
    let mut groups: BTreeMap<(String, String, ProductKey), u64> = BTreeMap::new();
    let mut skipped = Vec::new();
    for (i, r) in records.iter().enumerate() {
        match product_key(r) {
            Ok(k) => *groups.entry(k).or_default() += 1,
            Err(message) => skipped.push(RowIssue { row: i + 1, message }),
        }
    }
    let collections = groups
        .into_iter()
        .map(|((zip, year, product), amount)| RegistrationCollection {
            zip,
            year,
            product,
            amount,
        })
        .collect();
    Aggregation { collections, skipped }
}

/// Deterministic product IRIs, checked for collisions.
#[derive(Clone, Debug, Default)]
pub struct ProductCatalog {
    iris: BTreeMap<ProductKey, Iri>,
}

impl ProductCatalog {
    pub fn from_keys<'a>(keys: impl IntoIterator<Item = &'a ProductKey>) -> Result<Self, IngestError> {
        let mut iris = BTreeMap::new();
        let mut seen: BTreeMap<Iri, &ProductKey> = BTreeMap::new();
        for key in keys {
            let digest = Sha256::digest(key.canonical().as_bytes());
            let hash: String = digest[..4].iter().map(|b| format!("{b:02x}")).collect();
            let iri = evr(&format!(
                "evproduct.{}_{}_{}.{hash}",
                sanitize(&key.make),
                sanitize(&key.model),
                key.model_year
            ));
            if let Some(prev) = seen.get(&iri) {
                if *prev != key {
                    return Err(IngestError::IriCollision {
                        iri: iri.as_str().to_owned(),
                        first: prev.canonical(),
                        second: key.canonical(),
                    });
                }
            }
            seen.insert(iri.clone(), key);
            iris.insert(key.clone(), iri);
        }
        Ok(ProductCatalog { iris })
    }

    pub fn iri(&self, key: &ProductKey) -> Option<&Iri> {
        self.iris.get(key)
    }

    pub fn len(&self) -> usize {
        self.iris.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iris.is_empty()
    }
}

pub(crate) fn zip_iri(zip: &str) -> Iri {
    evr(&format!("zipcode.{zip}"))
}

fn add_individual(g: &mut Graph, iri: &Iri, class: &str, label: &str) -> Result<(), IngestError> {
    g.add(iri.clone(), &rdf_type(), ev(class))?;
    g.add(iri.clone(), &rdfs_label(), Literal::string(label))?;
    Ok(())
}

fn gyear(text: &str) -> Result<Literal, IngestError> {
    Ok(Literal::typed(text, crate::vocabulary::xsd("gYear"))?)
}

fn product_triples(g: &mut Graph, key: &ProductKey, p: &Iri) -> Result<(), IngestError> {
    let ty = rdf_type();
    g.add(p.clone(), &ty, ev("ElectricVehicleProduct"))?;
    g.add(p.clone(), &rdfs_label(), Literal::string(key.label()))?;
    g.add(p.clone(), &ev("hasModelYear"), gyear(&key.model_year)?)?;

    let make = evr(&sanitize(&key.make));
    add_individual(g, &make, "MakeType", &key.make)?;
    g.add(p.clone(), &ev("hasMakeType"), make)?;

    let model = evr(&format!(
        "modeltype.{}.{}.{}",
        sanitize(&key.make),
        sanitize(&key.model),
        key.model_year
    ));
    add_individual(g, &model, "ModelType", &key.model)?;
    g.add(model.clone(), &ev("hasModelYear"), gyear(&key.model_year)?)?;
    g.add(p.clone(), &ev("hasModelType"), model)?;

    let tech = evr(&format!("technology.{}", key.technology.code()));
    add_individual(g, &tech, "Technology", key.technology.label())?;
    g.add(p.clone(), &ev("isWithTechnology"), tech)?;

    for (prop, class, kind, value) in [
        ("hasManufacturer", "Manufacturer", "manufacturer", &key.manufacturer),
        ("hasVehicleUseCase", "VehicleUseCase", "vehicleusecase", &key.use_case),
        ("hasWeightLevel", "WeightLevel", "weightlevel", &key.weight_level),
    ] {
        if value.is_empty() {
            continue;
        }
        let node = evr(&format!("{kind}.{}", sanitize(value)));
        add_individual(g, &node, class, value)?;
        g.add(p.clone(), &ev(prop), node)?;
    }
    for level in &key.charger_types {
        g.add(p.clone(), &ev("hasMatchableChargerType"), level.iri())?;
    }
    for kind in &key.connector_types {
        g.add(p.clone(), &ev("hasMatchableConnectorType"), kind.iri())?;
    }
    Ok(())
}

/// Collection and product triples. Every collection's product must be in the catalog.
pub fn triplify_adoption(
    collections: &[RegistrationCollection],
    products: &ProductCatalog,
) -> Result<Graph, IngestError> {
    let dangling: BTreeSet<String> = collections
        .iter()
        .filter(|c| products.iri(&c.product).is_none())
        .map(|c| c.product.canonical())
        .collect();
    if !dangling.is_empty() {
        return Err(IngestError::DanglingProducts(dangling.into_iter().collect()));
    }
    let mut g = Graph::new();
    for (key, iri) in &products.iris {
        product_triples(&mut g, key, iri)?;
    }
    for c in collections {
        let p = products.iri(&c.product).expect("checked above");
        let product_local = p.as_str().rsplit_once("evproduct.").map_or("", |(_, l)| l);
        let coll = evr(&format!("evregcol.{}.{}.{product_local}", c.zip, c.year));
        g.add(coll.clone(), &rdf_type(), ev("ElectricVehicleRegistrationCollection"))?;
        g.add(coll.clone(), &ev("hasSpatialScope"), zip_iri(&c.zip))?;
        g.add(coll.clone(), &ev("hasTemporalScope"), gyear(&c.year)?)?;
        g.add(coll.clone(), &ev("hasProductInfo"), p.clone())?;
        let amount = i64::try_from(c.amount).expect("registration counts fit in i64");
        g.add(coll, &ev("hasAmount"), Literal::integer(amount))?;
    }
    Ok(g)
}
