use std::collections::BTreeMap;

use super::records::{Access, StationRecord};
use super::{add_geometry, sanitize, IngestError};
use crate::geometry::{Coord, Geometry};
use crate::rdf::{Graph, Iri, Literal};
use crate::vocabulary::{ev, evr, rdf_type, rdfs_label, xsd, ChargerLevel, ConnectorKind};

pub(crate) fn network_iri(network: &str) -> Iri {
    evr(&format!("chargingnetwork.{}Network", sanitize(network).replace('_', "")))
}

fn station_triples(g: &mut Graph, r: &StationRecord) -> Result<(), IngestError> {
    let s = evr(&format!("chargingstation.{}", sanitize(&r.station_id)));
    let ty = rdf_type();
    let access_class = match r.access {
        Access::Public => "PublicChargingStation",
        Access::Private => "PrivateChargingStation",
    };
    g.add(s.clone(), &ty, ev(access_class))?;
    let network_class = if r.network.is_some() {
        "NetworkedChargingStation"
    } else {
        "NonNetworkedChargingStation"
    };
    g.add(s.clone(), &ty, ev(network_class))?;
    if !r.name.is_empty() {
        g.add(s.clone(), &rdfs_label(), Literal::string(&r.name))?;
    }
    add_geometry(g, &s, &Geometry::Point(Coord::new(r.lon, r.lat)))?;

    if !r.operating_hours.is_empty() {
        g.add(s.clone(), &ev("hasOperatingHours"), Literal::string(&r.operating_hours))?;
    }
    if let Some(date) = &r.open_date {
        g.add(s.clone(), &ev("hasOpenTime"), Literal::typed(date, xsd("date"))?)?;
    }
    if let Some(year) = r.open_year {
        g.add(s.clone(), &ev("hasOpenYear"), Literal::gyear(year)?)?;
    }
    if let Some(p) = &r.pricing {
        g.add(s.clone(), &ev("hasPricingScheme"), Literal::string(p))?;
    }
    if let Some(p) = &r.parking_restriction {
        g.add(s.clone(), &ev("hasParkingRestriction"), Literal::string(p))?;
    }
    if let Some(network) = &r.network {
        let n = network_iri(network);
        g.add(n.clone(), &ty, ev("ChargingNetwork"))?;
        g.add(n.clone(), &rdfs_label(), Literal::string(network))?;
        g.add(s.clone(), &ev("isUnderChargingNetwork"), n)?;
    }
    if let Some(group) = &r.user_group {
        let u = evr(&format!("chargingusergroup.{}", sanitize(group)));
        g.add(u.clone(), &ty, ev("ChargingUserGroup"))?;
        g.add(u.clone(), &rdfs_label(), Literal::string(group))?;
        g.add(s.clone(), &ev("hasChargingUserGroup"), u)?;
    }

    let mut collections: BTreeMap<(ChargerLevel, ConnectorKind), u64> = BTreeMap::new();
    let record = || format!("station {}", r.station_id);
    for group in &r.charger_groups {
        let level = ChargerLevel::parse(&group.charger_type).ok_or_else(|| IngestError::UnknownToken {
            kind: "charger type",
            token: group.charger_type.clone(),
            record: record(),
        })?;
        let connector = ConnectorKind::parse(&group.connector_type).ok_or_else(|| IngestError::UnknownToken {
            kind: "connector type",
            token: group.connector_type.clone(),
            record: record(),
        })?;
        *collections.entry((level, connector)).or_default() += u64::from(group.count);
    }
    for ((level, connector), amount) in collections {
        let c = evr(&format!(
            "chargercollection.{}.{}.{}",
            sanitize(&r.station_id),
            level.local_name(),
            connector.token()
        ));
        g.add(c.clone(), &ty, ev("ChargerCollection"))?;
        g.add(c.clone(), &ev("hasChargerType"), level.iri())?;
        g.add(c.clone(), &ev("hasConnectorType"), connector.iri())?;
        g.add(c.clone(), &ev("hasAmount"), Literal::integer(amount as i64))?;
        g.add(s.clone(), &ev("hosts"), c)?;
    }
    Ok(())
}

/// Station features with geometry, attributes, network links and one
/// `ChargerCollection` per distinct (charger level, connector) pair.
pub fn triplify_stations(records: &[StationRecord]) -> Result<Graph, IngestError> {
    let mut g = Graph::new();
    for r in records {
        station_triples(&mut g, r)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::super::records::ChargerGroup;
    use super::*;

    fn station(groups: &[(&str, &str, u32)]) -> StationRecord {
        StationRecord {
            station_id: "S1".into(),
            name: "Depot".into(),
            lon: -121.49,
            lat: 38.58,
            zip: "95814".into(),
            access: Access::Public,
            network: Some("ChargePoint".into()),
            operating_hours: "24 hours daily  ".into(),
            open_date: Some("2019-03-01".into()),
            open_year: Some(2019),
            pricing: None,
            parking_restriction: None,
            user_group: None,
            charger_groups: groups
                .iter()
                .map(|&(c, k, n)| ChargerGroup {
                    charger_type: c.into(),
                    connector_type: k.into(),
                    count: n,
                })
                .collect(),
        }
    }

    #[test]
    fn two_collections() {
        let g = triplify_stations(&[station(&[("DCFC", "CHAdeMO", 2), ("DCFC", "J1772COMBO", 2)])]).unwrap();
        let ty = rdf_type();
        assert_eq!(g.count(None, Some(&ty), Some(&ev("ChargerCollection").into())), 2);
        let amounts: Vec<_> = g.matches(None, Some(&ev("hasAmount")), None).map(|t| t.object).collect();
        assert_eq!(amounts, vec![Literal::integer(2).into(), Literal::integer(2).into()]);
        assert_eq!(
            g.count(
                None,
                Some(&ev("isUnderChargingNetwork")),
                Some(&evr("chargingnetwork.ChargePointNetwork").into())
            ),
            1
        );
        assert_eq!(
            g.count(None, Some(&ev("hasOperatingHours")), Some(&Literal::string("24 hours daily  ").into())),
            1
        );
    }

    #[test]
    fn no_groups_no_collections() {
        let g = triplify_stations(&[station(&[])]).unwrap();
        assert_eq!(g.count(None, Some(&ev("hosts")), None), 0);
        assert!(g.count(None, Some(&rdf_type()), Some(&ev("PublicChargingStation").into())) == 1);
    }

    #[test]
    fn unknown_connector_named() {
        let err = triplify_stations(&[station(&[("DCFC", "SCART", 1)])]).unwrap_err();
        assert!(err.to_string().contains("SCART"));
    }
}
