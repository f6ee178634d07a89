use super::{ev, evr, rdf_type, rdfs_label};
use crate::rdf::{Graph, Iri, Literal};

/// Charging speed level of a charger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChargerLevel {
    Level1,
    Level2,
    DcFast,
}

impl ChargerLevel {
    pub const ALL: [ChargerLevel; 3] = [ChargerLevel::Level1, ChargerLevel::Level2, ChargerLevel::DcFast];

    /// Accepts `L1`/`LEVEL1`/`Level 1`, `L2`/`LEVEL2`/`Level 2`, `DCFC`/`DC_FAST`/`DC Fast`.
    pub fn parse(token: &str) -> Option<Self> {
        let t: String = token
            .chars()
            .filter(|c| !matches!(c, ' ' | '_' | '-'))
            .collect::<String>()
            .to_ascii_uppercase();
        match t.as_str() {
            "L1" | "LEVEL1" | "LEVEL1CHARGER" => Some(ChargerLevel::Level1),
            "L2" | "LEVEL2" | "LEVEL2CHARGER" => Some(ChargerLevel::Level2),
            "DCFC" | "DCFAST" | "DCFASTCHARGER" => Some(ChargerLevel::DcFast),
            _ => None,
        }
    }

    pub fn local_name(self) -> &'static str {
        match self {
            ChargerLevel::Level1 => "Level1Charger",
            ChargerLevel::Level2 => "Level2Charger",
            ChargerLevel::DcFast => "DCFastCharger",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ChargerLevel::Level1 => "Level 1",
            ChargerLevel::Level2 => "Level 2",
            ChargerLevel::DcFast => "DC Fast",
        }
    }

    /// `evr:chargertype.<local>`
    pub fn iri(self) -> Iri {
        evr(&format!("chargertype.{}", self.local_name()))
    }
}

/// Physical plug standard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConnectorKind {
    J1772,
    J1772Combo,
    Chademo,
    Tesla,
    Nema,
}

impl ConnectorKind {
    pub const ALL: [ConnectorKind; 5] = [
        ConnectorKind::J1772,
        ConnectorKind::J1772Combo,
        ConnectorKind::Chademo,
        ConnectorKind::Tesla,
        ConnectorKind::Nema,
    ];

    /// Case-insensitive; `CCS` is an alias of `J1772COMBO` and any `NEMA*` plug maps to `NEMA`.
    pub fn parse(token: &str) -> Option<Self> {
        let t = token.trim().to_ascii_uppercase();
        match t.as_str() {
            "J1772" => Some(ConnectorKind::J1772),
            "J1772COMBO" | "CCS" | "CCS1" => Some(ConnectorKind::J1772Combo),
            "CHADEMO" => Some(ConnectorKind::Chademo),
            "TESLA" | "NACS" => Some(ConnectorKind::Tesla),
            _ if t.starts_with("NEMA") => Some(ConnectorKind::Nema),
            _ => None,
        }
    }

    /// Also the `rdfs:label` of the individual.
    pub fn token(self) -> &'static str {
        match self {
            ConnectorKind::J1772 => "J1772",
            ConnectorKind::J1772Combo => "J1772COMBO",
            ConnectorKind::Chademo => "CHAdeMO",
            ConnectorKind::Tesla => "TESLA",
            ConnectorKind::Nema => "NEMA",
        }
    }

    /// `evr:connectortype.<token>`
    pub fn iri(self) -> Iri {
        evr(&format!("connectortype.{}", self.token()))
    }
}

/// Typed and labelled charger-level and connector individuals.
pub fn individuals_graph() -> Graph {
    let mut g = Graph::new();
    let (ty, label) = (rdf_type(), rdfs_label());
    let mut add = |s: Iri, class: &str, text: &str| {
        g.add(s.clone(), &ty, ev(class)).expect("valid");
        g.add(s, &label, Literal::string(text)).expect("valid");
    };
    for level in ChargerLevel::ALL {
        add(level.iri(), "ChargerType", level.label());
    }
    for kind in ConnectorKind::ALL {
        add(kind.iri(), "ConnectorType", kind.token());
    }
    g
}
