//! Pre-computed triples: feature-in-zip spatial relations and `rdf:type`
//! closure over the registry's subclass axioms.

use std::collections::BTreeMap;
use std::fmt;

use crate::geometry::{parse_wkt, sf_crosses, sf_intersects, sf_within, Dimension, Geometry, Rect, EPSILON};
use crate::rdf::{Graph, Iri, Term, Triple};
use crate::vocabulary::{geo, kwg, rdf_type, OntologyRegistry};

/// Outcome of [`materialize_spatial_relations`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpatialReport {
    pub within_added: usize,
    pub contains_added: usize,
    pub crosses_added: usize,
    pub zips: usize,
    pub point_features: usize,
    pub line_features: usize,
    /// Features (or zips) whose geometry is missing or unreadable, with the reason.
    pub skipped: Vec<(String, String)>,
    /// Point features lying on a zip boundary and inside no zip.
    pub boundary_points: Vec<(String, Vec<String>)>,
}

impl SpatialReport {
    pub fn added(&self) -> usize {
        self.within_added + self.contains_added + self.crosses_added
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "added": {
                "kwg-ont:sfWithin": self.within_added,
                "kwg-ont:sfContains": self.contains_added,
                "kwg-ont:sfCrosses": self.crosses_added,
            },
            "total_added": self.added(),
            "zips": self.zips,
            "point_features": self.point_features,
            "line_features": self.line_features,
            "skipped": self.skipped.iter().map(|(f, why)| serde_json::json!({"feature": f, "reason": why})).collect::<Vec<_>>(),
            "boundary_points": self.boundary_points.iter().map(|(f, zips)| serde_json::json!({"feature": f, "touches": zips})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SpatialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kwg-ont:sfWithin\t{}", self.within_added)?;
        writeln!(f, "kwg-ont:sfContains\t{}", self.contains_added)?;
        writeln!(f, "kwg-ont:sfCrosses\t{}", self.crosses_added)?;
        writeln!(f, "total\t{}", self.added())?;
        for (feature, why) in &self.skipped {
            writeln!(f, "skipped {feature}: {why}")?;
        }
        for (feature, zips) in &self.boundary_points {
            writeln!(f, "on boundary, assigned to no zip: {feature} (touches {})", zips.join(", "))?;
        }
        Ok(())
    }
}

/// Reads the geometry of a feature via `geo:hasGeometry` / `geo:asWKT`.
pub fn feature_geometry(graph: &Graph, feature: &Term) -> Result<Geometry, String> {
    let has_geometry = geo("hasGeometry");
    let as_wkt = geo("asWKT");
    let node = graph
        .objects(feature, &has_geometry)
        .next()
        .ok_or_else(|| "no geo:hasGeometry".to_owned())?;
    let wkt = graph
        .objects(&node, &as_wkt)
        .find_map(|t| t.as_literal().map(|l| l.lexical().to_owned()))
        .ok_or_else(|| "geometry node has no geo:asWKT literal".to_owned())?;
    parse_wkt(&wkt).map_err(|e| e.to_string())
}

/// Subjects typed with a class that is, per the registry, a `geo:Feature`
/// other than zip areas and administrative regions.
pub fn spatial_features(graph: &Graph, registry: &OntologyRegistry) -> Vec<Term> {
    let feature = geo("Feature");
    let areas = [kwg("ZipCodeArea"), kwg("AdministrativeRegion_2"), kwg("AdministrativeRegion_3")];
    let ty = rdf_type();
    let mut class_ok: BTreeMap<Iri, bool> = BTreeMap::new();
    let mut out: Vec<Term> = Vec::new();
    let mut excluded = std::collections::BTreeSet::new();
    for t in graph.matches(None, Some(&ty), None) {
        let Some(c) = t.object.as_iri() else { continue };
        if areas.contains(c) {
            excluded.insert(t.subject.clone());
            continue;
        }
        let ok = *class_ok
            .entry(c.clone())
            .or_insert_with(|| registry.is_subclass_of(c, &feature));
        if ok {
            out.push(t.subject);
        }
    }
    out.sort();
    out.dedup();
    out.retain(|s| !excluded.contains(s));
    out
}

struct Zip {
    term: Term,
    geometry: Geometry,
    bbox: Rect,
}

fn insert(graph: &mut Graph, s: &Term, p: &Iri, o: &Term) -> bool {
    let t = Triple::new(s.clone(), p.clone(), o.clone()).expect("features are IRIs or blank nodes");
    graph.insert(t).expect("valid triple")
}

/// Adds `sfWithin`/`sfContains` between point features and the zips whose
/// interior holds them, and `sfCrosses` from line features to the zips they
/// cross. Idempotent.
pub fn materialize_spatial_relations(graph: &mut Graph, registry: &OntologyRegistry) -> SpatialReport {
    let mut report = SpatialReport::default();
    let zip_class: Term = kwg("ZipCodeArea").into();
    let ty = rdf_type();
    let mut zips = Vec::new();
    let zip_terms: Vec<Term> = graph.subjects(&ty, &zip_class).collect();
    for term in zip_terms {
        match feature_geometry(graph, &term) {
            Ok(geometry) if geometry.dimension() == Dimension::Polygonal => {
                let bbox = geometry.bbox();
                zips.push(Zip { term, geometry, bbox });
            }
            Ok(g) => report
                .skipped
                .push((term.to_ntriples(), format!("zip geometry is a {}", g.kind()))),
            Err(why) => report.skipped.push((term.to_ntriples(), why)),
        }
    }
    report.zips = zips.len();

    let (within, contains, crosses) = (kwg("sfWithin"), kwg("sfContains"), kwg("sfCrosses"));
    for feature in spatial_features(graph, registry) {
        let geometry = match feature_geometry(graph, &feature) {
            Ok(g) => g,
            Err(why) => {
                report.skipped.push((feature.to_ntriples(), why));
                continue;
            }
        };
        let fb = geometry.bbox();
        let candidates = zips.iter().filter(|z| !z.bbox.disjoint(&fb, EPSILON));
        match geometry.dimension() {
            Dimension::Puntal => {
                report.point_features += 1;
                let mut inside = false;
                let mut touching = Vec::new();
                for z in candidates {
                    if sf_within(&geometry, &z.geometry) {
                        inside = true;
                        report.within_added += insert(graph, &feature, &within, &z.term) as usize;
                        report.contains_added += insert(graph, &z.term, &contains, &feature) as usize;
                    } else if sf_intersects(&geometry, &z.geometry) {
                        touching.push(z.term.to_ntriples());
                    }
                }
                if !inside && !touching.is_empty() {
                    report.boundary_points.push((feature.to_ntriples(), touching));
                }
            }
            Dimension::Lineal => {
                report.line_features += 1;
                for z in candidates {
                    if sf_crosses(&geometry, &z.geometry).expect("line/polygon is supported") {
                        report.crosses_added += insert(graph, &feature, &crosses, &z.term) as usize;
                    }
                }
            }
            Dimension::Polygonal => report.skipped.push((
                feature.to_ntriples(),
                "polygonal features are not related to zips".to_owned(),
            )),
        }
    }
    report
}

/// For every `(x rdf:type C)` adds `(x rdf:type D)` for each registered
/// ancestor `D` of `C`. Returns the number of triples added.
pub fn materialize_subclass_closure(graph: &mut Graph, registry: &OntologyRegistry) -> usize {
    let ty = rdf_type();
    let typed: Vec<Triple> = graph.matches(None, Some(&ty), None).collect();
    let mut ancestors: BTreeMap<Iri, Vec<Iri>> = BTreeMap::new();
    let mut added = 0;
    for t in typed {
        let Some(c) = t.object.as_iri() else { continue };
        let supers = ancestors
            .entry(c.clone())
            .or_insert_with(|| registry.ancestors(c).into_iter().collect());
        for d in supers.iter() {
            added += insert(graph, &t.subject, &ty, &d.clone().into()) as usize;
        }
    }
    added
}
