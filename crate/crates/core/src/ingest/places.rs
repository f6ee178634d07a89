use std::collections::BTreeSet;

use super::adoption::zip_iri;
use super::records::ZipAreaRecord;
use super::{add_geometry, sanitize, IngestError};
use crate::rdf::{iri, vocab, Graph, Iri, Literal};
use crate::vocabulary::{evr, kwg, rdf_type, rdfs_label};

pub(crate) fn state_iri(state: &str) -> Iri {
    evr(&format!("state.{}", sanitize(state)))
}

pub(crate) fn county_iri(state: &str, county: &str) -> Iri {
    evr(&format!("county.{}.{}", sanitize(state), sanitize(county)))
}

/// Zip areas with geometry and the declared zip/county/state hierarchy.
pub fn triplify_places(records: &[ZipAreaRecord]) -> Result<Graph, IngestError> {
    let mut g = Graph::new();
    let mut seen = BTreeSet::new();
    let (ty, label) = (rdf_type(), rdfs_label());
    let (within, contains) = (kwg("sfWithin"), kwg("sfContains"));
    for r in records {
        if !seen.insert(r.zip.as_str()) {
            return Err(IngestError::DuplicateZip(r.zip.clone()));
        }
        let z = zip_iri(&r.zip);
        g.add(z.clone(), &ty, kwg("ZipCodeArea"))?;
        g.add(z.clone(), &label, Literal::string(format!("zip code {}", r.zip)))?;
        add_geometry(&mut g, &z, &r.polygon)?;

        let state = state_iri(&r.state_label);
        g.add(state.clone(), &ty, kwg("AdministrativeRegion_2"))?;
        g.add(state.clone(), &label, Literal::string(&r.state_label))?;
        let county = county_iri(&r.state_label, &r.county_label);
        g.add(county.clone(), &ty, kwg("AdministrativeRegion_3"))?;
        g.add(county.clone(), &label, Literal::string(&r.county_label))?;
        for parent in [state, county] {
            g.add(parent.clone(), &contains, z.clone())?;
            g.add(z.clone(), &within, parent)?;
        }
        if let Some(same) = &r.kwg_sameas_iri {
            g.add(z.clone(), &iri(vocab::OWL_SAME_AS), same.clone())?;
        }
    }
    Ok(g)
}
