//! Planar simple-features geometry: WKT text, validation, and the
//! within / contains / crosses / intersects predicates.
//!
//! Longitude and latitude are treated as Cartesian x and y. Orientation
//! signs come from an exact determinant; points closer than [`EPSILON`] to an
//! edge are classified as lying on it.

mod locate;
mod predicates;
mod wkt;

pub use locate::{locate, Location};
pub use predicates::{sf_contains, sf_crosses, sf_intersects, sf_within};
pub use wkt::{parse_wkt, to_wkt};

use thiserror::Error;

/// Snap tolerance for on-boundary classification, in coordinate units.
pub const EPSILON: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("malformed WKT at offset {position}: {message}")]
    Wkt { position: usize, message: String },
    #[error("ring has {0} points; at least 4 are required")]
    RingTooShort(usize),
    #[error("ring is not closed (first point differs from last)")]
    RingNotClosed,
    #[error("polygon exterior ring intersects itself")]
    SelfIntersecting,
    #[error("linestring has {0} points; at least 2 are required")]
    LineTooShort(usize),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("{predicate} is not supported for {left} / {right}")]
    Unsupported {
        predicate: &'static str,
        left: &'static str,
        right: &'static str,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coord {
    pub x: f64,
    pub y: f64,
}

impl Coord {
    pub fn new(x: f64, y: f64) -> Self {
        Coord { x, y }
    }
}

/// Axis-aligned bounding rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Rect {
    fn from_coords<'a>(coords: impl IntoIterator<Item = &'a Coord>) -> Rect {
        let mut r = Rect {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for c in coords {
            r.min_x = r.min_x.min(c.x);
            r.min_y = r.min_y.min(c.y);
            r.max_x = r.max_x.max(c.x);
            r.max_y = r.max_y.max(c.y);
        }
        r
    }

    /// True when the rectangles, grown by `margin`, share no point.
    pub fn disjoint(&self, other: &Rect, margin: f64) -> bool {
        self.max_x + margin < other.min_x
            || other.max_x + margin < self.min_x
            || self.max_y + margin < other.min_y
            || other.max_y + margin < self.min_y
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineString {
    points: Vec<Coord>,
}

impl LineString {
    pub fn new(points: Vec<Coord>) -> Result<Self, GeometryError> {
        check_finite(&points)?;
        if points.len() < 2 {
            return Err(GeometryError::LineTooShort(points.len()));
        }
        Ok(LineString { points })
    }

    pub fn points(&self) -> &[Coord] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.points.first() == self.points.last()
    }

    pub(crate) fn segments(&self) -> impl Iterator<Item = (Coord, Coord)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    exterior: Vec<Coord>,
    interiors: Vec<Vec<Coord>>,
}

fn check_finite(points: &[Coord]) -> Result<(), GeometryError> {
    if points.iter().all(|c| c.x.is_finite() && c.y.is_finite()) {
        Ok(())
    } else {
        Err(GeometryError::NonFinite)
    }
}

fn check_ring(ring: &[Coord]) -> Result<(), GeometryError> {
    check_finite(ring)?;
    if ring.len() < 4 {
        return Err(GeometryError::RingTooShort(ring.len()));
    }
    if ring.first() != ring.last() {
        return Err(GeometryError::RingNotClosed);
    }
    Ok(())
}

impl Polygon {
    /// Validates closure and size of every ring and simplicity of the exterior ring.
    pub fn new(exterior: Vec<Coord>, interiors: Vec<Vec<Coord>>) -> Result<Self, GeometryError> {
        check_ring(&exterior)?;
        for ring in &interiors {
            check_ring(ring)?;
        }
        if !locate::ring_is_simple(&exterior) {
            return Err(GeometryError::SelfIntersecting);
        }
        Ok(Polygon {
            exterior,
            interiors,
        })
    }

    pub fn exterior(&self) -> &[Coord] {
        &self.exterior
    }

    pub fn interiors(&self) -> &[Vec<Coord>] {
        &self.interiors
    }

    pub(crate) fn rings(&self) -> impl Iterator<Item = &[Coord]> {
        std::iter::once(self.exterior.as_slice()).chain(self.interiors.iter().map(Vec::as_slice))
    }

    pub(crate) fn edges(&self) -> impl Iterator<Item = (Coord, Coord)> + '_ {
        self.rings()
            .flat_map(|ring| ring.windows(2).map(|w| (w[0], w[1])))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Geometry {
    Point(Coord),
    LineString(LineString),
    Polygon(Polygon),
    MultiPoint(Vec<Coord>),
    MultiLineString(Vec<LineString>),
    MultiPolygon(Vec<Polygon>),
}

/// Topological dimension class of a geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Puntal,
    Lineal,
    Polygonal,
}

impl Geometry {
    pub fn kind(&self) -> &'static str {
        match self {
            Geometry::Point(_) => "Point",
            Geometry::LineString(_) => "LineString",
            Geometry::Polygon(_) => "Polygon",
            Geometry::MultiPoint(_) => "MultiPoint",
            Geometry::MultiLineString(_) => "MultiLineString",
            Geometry::MultiPolygon(_) => "MultiPolygon",
        }
    }

    pub fn dimension(&self) -> Dimension {
        match self {
            Geometry::Point(_) | Geometry::MultiPoint(_) => Dimension::Puntal,
            Geometry::LineString(_) | Geometry::MultiLineString(_) => Dimension::Lineal,
            Geometry::Polygon(_) | Geometry::MultiPolygon(_) => Dimension::Polygonal,
        }
    }

    /// Tight axis-aligned bounds.
    pub fn bbox(&self) -> Rect {
        match self {
            Geometry::Point(c) => Rect::from_coords([c]),
            Geometry::MultiPoint(cs) => Rect::from_coords(cs),
            Geometry::LineString(l) => Rect::from_coords(&l.points),
            Geometry::MultiLineString(ls) => Rect::from_coords(ls.iter().flat_map(|l| &l.points)),
            Geometry::Polygon(p) => Rect::from_coords(&p.exterior),
            Geometry::MultiPolygon(ps) => Rect::from_coords(ps.iter().flat_map(|p| &p.exterior)),
        }
    }

    pub(crate) fn points(&self) -> &[Coord] {
        match self {
            Geometry::Point(c) => std::slice::from_ref(c),
            Geometry::MultiPoint(cs) => cs,
            _ => &[],
        }
    }

    pub(crate) fn lines(&self) -> &[LineString] {
        match self {
            Geometry::LineString(l) => std::slice::from_ref(l),
            Geometry::MultiLineString(ls) => ls,
            _ => &[],
        }
    }

    pub(crate) fn polygons(&self) -> &[Polygon] {
        match self {
            Geometry::Polygon(p) => std::slice::from_ref(p),
            Geometry::MultiPolygon(ps) => ps,
            _ => &[],
        }
    }

    /// Every edge of the geometry's linework (line segments or ring edges).
    pub(crate) fn edges(&self) -> Vec<(Coord, Coord)> {
        let mut out: Vec<(Coord, Coord)> = self.lines().iter().flat_map(|l| l.segments()).collect();
        out.extend(self.polygons().iter().flat_map(|p| p.edges()));
        out
    }

    /// Vertices that can stand in for each connected component.
    pub(crate) fn representative_points(&self) -> Vec<Coord> {
        let mut out = self.points().to_vec();
        out.extend(self.lines().iter().map(|l| l.points[0]));
        out.extend(self.polygons().iter().map(|p| p.exterior[0]));
        out
    }
}

/// Bounding box of a geometry, `(min_x, min_y, max_x, max_y)`.
pub fn bbox(geometry: &Geometry) -> (f64, f64, f64, f64) {
    let r = geometry.bbox();
    (r.min_x, r.min_y, r.max_x, r.max_y)
}
