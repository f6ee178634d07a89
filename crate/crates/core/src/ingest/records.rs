use std::io::Read;

use serde::Deserialize;

use super::IngestError;
use crate::geometry::{parse_wkt, Dimension, Geometry};
use crate::rdf::Iri;

/// A data row that was skipped, with its 1-based position among data rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowIssue {
    pub row: usize,
    pub message: String,
}

/// Records read from one file plus the rows that failed their invariants.
#[derive(Clone, Debug)]
pub struct Loaded<T> {
    pub records: Vec<T>,
    pub skipped: Vec<RowIssue>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Technology {
    Bev,
    Phev,
}

impl Technology {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim().to_ascii_uppercase().as_str() {
            "BEV" => Some(Technology::Bev),
            "PHEV" => Some(Technology::Phev),
            _ => None,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Technology::Bev => "BEV",
            Technology::Phev => "PHEV",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Technology::Bev => "Battery Electric Vehicle",
            Technology::Phev => "Plug-in Hybrid Electric Vehicle",
        }
    }
}

/// One vehicle registration. Fields are kept as read; invariants are checked
/// when registrations are aggregated.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct RegistrationRecord {
    pub vin8: String,
    pub zip: String,
    pub model_year: String,
    pub registration_year: String,
    pub make: String,
    pub model: String,
    pub technology: String,
    pub manufacturer: String,
    pub use_case: String,
    pub weight_level: String,
    #[serde(deserialize_with = "semicolon_list")]
    pub charger_types: Vec<String>,
    #[serde(deserialize_with = "semicolon_list")]
    pub connector_types: Vec<String>,
}

fn semicolon_list<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    let text = String::deserialize(d)?;
    Ok(split_list(&text))
}

pub(crate) fn split_list(text: &str) -> Vec<String> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

pub(crate) fn is_year(text: &str) -> bool {
    text.len() == 4 && text.bytes().all(|b| b.is_ascii_digit())
}

pub(crate) fn is_zip(text: &str) -> bool {
    text.len() == 5 && text.bytes().all(|b| b.is_ascii_digit())
}

fn is_date(text: &str) -> bool {
    let b = text.as_bytes();
    b.len() == 10
        && b[4] == b'-'
        && b[7] == b'-'
        && b.iter().enumerate().all(|(i, c)| i == 4 || i == 7 || c.is_ascii_digit())
        && matches!(text[5..7].parse::<u8>(), Ok(1..=12))
        && matches!(text[8..10].parse::<u8>(), Ok(1..=31))
}

fn optional(text: String) -> Option<String> {
    if text.trim().is_empty() {
        None
    } else {
        Some(text)
    }
}

fn optional_number(text: &str, column: &str) -> Result<Option<f64>, String> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(None);
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Some(v)),
        _ => Err(format!("{column} {t:?} is not a number")),
    }
}

fn read_rows<R: Read, Raw: for<'de> Deserialize<'de>, T>(
    input: R,
    source_name: &str,
    mut convert: impl FnMut(Raw) -> Result<T, String>,
) -> Result<Loaded<T>, IngestError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let csv_err = |source| IngestError::Csv {
        source_name: source_name.to_owned(),
        source,
    };
    // a missing header is structural, not a dirty row
    reader.headers().map_err(csv_err)?;
    let mut out = Loaded {
        records: Vec::new(),
        skipped: Vec::new(),
    };
    for (i, row) in reader.deserialize::<Raw>().enumerate() {
        let row_no = i + 1;
        match row {
            Ok(raw) => match convert(raw) {
                Ok(rec) => out.records.push(rec),
                Err(message) => out.skipped.push(RowIssue { row: row_no, message }),
            },
            Err(e) => match e.kind() {
                csv::ErrorKind::Deserialize { .. } | csv::ErrorKind::UnequalLengths { .. } => {
                    out.skipped.push(RowIssue {
                        row: row_no,
                        message: e.to_string(),
                    })
                }
                _ => return Err(csv_err(e)),
            },
        }
    }
    Ok(out)
}

/// Header: `vin8,zip,model_year,registration_year,make,model,technology,
/// manufacturer,use_case,weight_level,charger_types,connector_types`
/// (the last two `;`-separated). Row invariants are checked later by
/// [`aggregate_registrations`](super::aggregate_registrations).
pub fn read_registrations<R: Read>(input: R, source_name: &str) -> Result<Loaded<RegistrationRecord>, IngestError> {
    read_rows(input, source_name, Ok::<RegistrationRecord, String>)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Access {
    Public,
    Private,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargerGroup {
    pub charger_type: String,
    pub connector_type: String,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationRecord {
    pub station_id: String,
    pub name: String,
    pub lon: f64,
    pub lat: f64,
    pub zip: String,
    pub access: Access,
    pub network: Option<String>,
    /// Byte-exact, including any trailing whitespace.
    pub operating_hours: String,
    /// `YYYY-MM-DD`, or `None` when only the year is known.
    pub open_date: Option<String>,
    pub open_year: Option<i32>,
    pub pricing: Option<String>,
    pub parking_restriction: Option<String>,
    pub user_group: Option<String>,
    pub charger_groups: Vec<ChargerGroup>,
}

#[derive(Deserialize)]
struct RawStation {
    station_id: String,
    name: String,
    lon: String,
    lat: String,
    zip: String,
    access: String,
    network: String,
    operating_hours: String,
    open_date: String,
    pricing: String,
    parking_restriction: String,
    user_group: String,
    charger_groups: String,
}

/// `LEVEL:CONNECTOR:COUNT` entries separated by `;`.
pub(crate) fn parse_charger_groups(text: &str) -> Result<Vec<ChargerGroup>, String> {
    split_list(text)
        .into_iter()
        .map(|entry| {
            let parts: Vec<&str> = entry.split(':').map(str::trim).collect();
            let [charger, connector, count] = parts[..] else {
                return Err(format!("charger group {entry:?} is not LEVEL:CONNECTOR:COUNT"));
            };
            let count = count
                .parse::<u32>()
                .ok()
                .filter(|&c| c >= 1)
                .ok_or_else(|| format!("charger group {entry:?} needs a count of at least 1"))?;
            Ok(ChargerGroup {
                charger_type: charger.to_owned(),
                connector_type: connector.to_owned(),
                count,
            })
        })
        .collect()
}

fn convert_station(raw: RawStation) -> Result<StationRecord, String> {
    if raw.station_id.trim().is_empty() {
        return Err("empty station_id".into());
    }
    let coord = |text: &str, name: &str| match text.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("{name} {text:?} is not a number")),
    };
    let lon = coord(&raw.lon, "lon")?;
    let lat = coord(&raw.lat, "lat")?;
    let access = match raw.access.trim().to_ascii_lowercase().as_str() {
        "public" => Access::Public,
        "private" => Access::Private,
        other => return Err(format!("access {other:?} is neither public nor private")),
    };
    let user_group = optional(raw.user_group);
    if access == Access::Public && user_group.is_some() {
        return Err("public station with an exclusive user group".into());
    }
    let date = raw.open_date.trim();
    let (open_date, open_year) = if date.is_empty() {
        (None, None)
    } else if is_date(date) {
        (Some(date.to_owned()), date[..4].parse().ok())
    } else if is_year(date) {
        (None, date.parse().ok())
    } else {
        return Err(format!("open_date {date:?} is neither YYYY-MM-DD nor YYYY"));
    };
    Ok(StationRecord {
        station_id: raw.station_id.trim().to_owned(),
        name: raw.name,
        lon,
        lat,
        zip: raw.zip.trim().to_owned(),
        access,
        network: optional(raw.network).map(|n| n.trim().to_owned()),
        operating_hours: raw.operating_hours,
        open_date,
        open_year,
        pricing: optional(raw.pricing),
        parking_restriction: optional(raw.parking_restriction),
        user_group,
        charger_groups: parse_charger_groups(&raw.charger_groups)?,
    })
}

/// Header: `station_id,name,lon,lat,zip,access,network,operating_hours,
/// open_date,pricing,parking_restriction,user_group,charger_groups`.
pub fn read_stations<R: Read>(input: R, source_name: &str) -> Result<Loaded<StationRecord>, IngestError> {
    read_rows(input, source_name, convert_station)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssetKind {
    Line,
    Substation,
    Plant,
}

impl AssetKind {
    pub fn name(self) -> &'static str {
        match self {
            AssetKind::Line => "line",
            AssetKind::Substation => "substation",
            AssetKind::Plant => "plant",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransmissionAssetRecord {
    pub asset_id: String,
    pub kind: AssetKind,
    pub geometry: Geometry,
    pub voltage_class: Option<String>,
    pub min_voltage_kv: Option<f64>,
    pub max_voltage_kv: Option<f64>,
    pub summer_mw: Option<f64>,
    pub winter_mw: Option<f64>,
    pub operating_mw: Option<f64>,
    pub status: Option<String>,
    pub owner: Option<String>,
}

#[derive(Deserialize)]
struct RawAsset {
    asset_id: String,
    kind: String,
    wkt: String,
    voltage_class: String,
    min_voltage_kv: String,
    max_voltage_kv: String,
    summer_mw: String,
    winter_mw: String,
    operating_mw: String,
    status: String,
    owner: String,
}

fn convert_asset(raw: RawAsset) -> Result<TransmissionAssetRecord, String> {
    if raw.asset_id.trim().is_empty() {
        return Err("empty asset_id".into());
    }
    let kind = match raw.kind.trim().to_ascii_lowercase().as_str() {
        "line" => AssetKind::Line,
        "substation" => AssetKind::Substation,
        "plant" => AssetKind::Plant,
        other => return Err(format!("kind {other:?} is not line, substation or plant")),
    };
    let geometry = parse_wkt(&raw.wkt).map_err(|e| e.to_string())?;
    Ok(TransmissionAssetRecord {
        asset_id: raw.asset_id.trim().to_owned(),
        kind,
        geometry,
        voltage_class: optional(raw.voltage_class).map(|v| v.trim().to_owned()),
        min_voltage_kv: optional_number(&raw.min_voltage_kv, "min_voltage_kv")?,
        max_voltage_kv: optional_number(&raw.max_voltage_kv, "max_voltage_kv")?,
        summer_mw: optional_number(&raw.summer_mw, "summer_mw")?,
        winter_mw: optional_number(&raw.winter_mw, "winter_mw")?,
        operating_mw: optional_number(&raw.operating_mw, "operating_mw")?,
        status: optional(raw.status).map(|v| v.trim().to_owned()),
        owner: optional(raw.owner).map(|v| v.trim().to_owned()),
    })
}

/// Header: `asset_id,kind,wkt,voltage_class,min_voltage_kv,max_voltage_kv,
/// summer_mw,winter_mw,operating_mw,status,owner`. Geometry-kind agreement is
/// checked by [`triplify_transmission`](super::triplify_transmission).
pub fn read_transmission<R: Read>(
    input: R,
    source_name: &str,
) -> Result<Loaded<TransmissionAssetRecord>, IngestError> {
    read_rows(input, source_name, convert_asset)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZipAreaRecord {
    pub zip: String,
    pub polygon: Geometry,
    pub state_label: String,
    pub county_label: String,
    pub kwg_sameas_iri: Option<Iri>,
}

#[derive(Deserialize)]
struct RawPlace {
    zip: String,
    state: String,
    county: String,
    wkt: String,
    kwg_sameas: String,
}

fn convert_place(raw: RawPlace) -> Result<ZipAreaRecord, String> {
    let zip = raw.zip.trim().to_owned();
    if !is_zip(&zip) {
        return Err(format!("zip {zip:?} is not five digits"));
    }
    if raw.state.trim().is_empty() || raw.county.trim().is_empty() {
        return Err("state and county are required".into());
    }
    let polygon = parse_wkt(&raw.wkt).map_err(|e| e.to_string())?;
    if polygon.dimension() != Dimension::Polygonal {
        return Err(format!("zip area geometry is a {}, not a polygon", polygon.kind()));
    }
    let kwg_sameas_iri = match raw.kwg_sameas.trim() {
        "" => None,
        text => Some(Iri::new(text).map_err(|e| e.to_string())?),
    };
    Ok(ZipAreaRecord {
        zip,
        polygon,
        state_label: raw.state.trim().to_owned(),
        county_label: raw.county.trim().to_owned(),
        kwg_sameas_iri,
    })
}

/// Header: `zip,state,county,wkt,kwg_sameas`.
pub fn read_places<R: Read>(input: R, source_name: &str) -> Result<Loaded<ZipAreaRecord>, IngestError> {
    read_rows(input, source_name, convert_place)
}
