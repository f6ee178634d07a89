use std::cmp::Ordering;

use super::{Coord, Geometry, LineString, Polygon, EPSILON};

/// Position of a point relative to a geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Exact sign of the orientation determinant of `(a, b, c)`.
pub(crate) fn orientation(a: Coord, b: Coord, c: Coord) -> Ordering {
    let det = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    det.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

pub(crate) fn distance_to_segment(p: Coord, a: Coord, b: Coord) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0)
    };
    let (qx, qy) = (a.x + t * dx, a.y + t * dy);
    ((p.x - qx).powi(2) + (p.y - qy).powi(2)).sqrt()
}

fn distance(a: Coord, b: Coord) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

/// Parameter of the projection of `p` onto the line through `a`, `b`.
fn project(p: Coord, a: Coord, b: Coord) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        0.0
    } else {
        ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2
    }
}

pub(crate) fn lerp(a: Coord, b: Coord, t: f64) -> Coord {
    Coord::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
}

/// Intersection of segment `p` with segment `q`, as parameters along `p`.
#[derive(Debug, PartialEq)]
pub(crate) enum SegmentHit {
    None,
    Point(f64),
    Overlap(f64, f64),
}

fn on_segment_collinear(a: Coord, b: Coord, c: Coord) -> bool {
    c.x >= a.x.min(b.x) && c.x <= a.x.max(b.x) && c.y >= a.y.min(b.y) && c.y <= a.y.max(b.y)
}

/// Exact-sign intersection test between two closed segments.
pub(crate) fn segments_touch(p1: Coord, p2: Coord, q1: Coord, q2: Coord) -> bool {
    let o1 = orientation(p1, p2, q1);
    let o2 = orientation(p1, p2, q2);
    let o3 = orientation(q1, q2, p1);
    let o4 = orientation(q1, q2, p2);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == Ordering::Equal && on_segment_collinear(p1, p2, q1))
        || (o2 == Ordering::Equal && on_segment_collinear(p1, p2, q2))
        || (o3 == Ordering::Equal && on_segment_collinear(q1, q2, p1))
        || (o4 == Ordering::Equal && on_segment_collinear(q1, q2, p2))
}

pub(crate) fn segment_hit(p1: Coord, p2: Coord, q1: Coord, q2: Coord) -> SegmentHit {
    if !segments_touch(p1, p2, q1, q2) {
        return SegmentHit::None;
    }
    let collinear = orientation(p1, p2, q1) == Ordering::Equal
        && orientation(p1, p2, q2) == Ordering::Equal;
    if collinear {
        if p1 == p2 {
            return SegmentHit::Point(0.0);
        }
        let (a, b) = (project(q1, p1, p2), project(q2, p1, p2));
        let lo = a.min(b).max(0.0);
        let hi = a.max(b).min(1.0);
        return match lo.partial_cmp(&hi) {
            Some(Ordering::Less) => SegmentHit::Overlap(lo, hi),
            Some(Ordering::Equal) => SegmentHit::Point(lo),
            _ => SegmentHit::None,
        };
    }
    let r = (p2.x - p1.x, p2.y - p1.y);
    let s = (q2.x - q1.x, q2.y - q1.y);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom == 0.0 {
        return SegmentHit::None;
    }
    let t = ((q1.x - p1.x) * s.1 - (q1.y - p1.y) * s.0) / denom;
    SegmentHit::Point(t.clamp(0.0, 1.0))
}

/// Even-odd crossing test for a point known to be off the ring.
pub(crate) fn ring_contains(ring: &[Coord], p: Coord) -> bool {
    let mut inside = false;
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.y > p.y) != (b.y > p.y) {
            let o = orientation(a, b, p);
            let upward = b.y > a.y;
            if (upward && o == Ordering::Greater) || (!upward && o == Ordering::Less) {
                inside = !inside;
            }
        }
    }
    inside
}

fn on_ring(ring: &[Coord], p: Coord) -> bool {
    ring.windows(2)
        .any(|w| distance_to_segment(p, w[0], w[1]) <= EPSILON)
}

pub(crate) fn locate_in_polygon(p: Coord, poly: &Polygon) -> Location {
    if poly.rings().any(|ring| on_ring(ring, p)) {
        return Location::Boundary;
    }
    if !ring_contains(poly.exterior(), p) {
        return Location::Exterior;
    }
    if poly.interiors().iter().any(|hole| ring_contains(hole, p)) {
        Location::Exterior
    } else {
        Location::Interior
    }
}

fn locate_on_lines(p: Coord, lines: &[LineString]) -> Location {
    let on_line = lines
        .iter()
        .any(|l| l.segments().any(|(a, b)| distance_to_segment(p, a, b) <= EPSILON));
    if !on_line {
        return Location::Exterior;
    }
    // mod-2 rule: an endpoint shared by an odd number of open components is boundary
    let endpoint_hits = lines
        .iter()
        .filter(|l| !l.is_closed())
        .flat_map(|l| [l.points()[0], l.points()[l.points().len() - 1]])
        .filter(|&e| distance(e, p) <= EPSILON)
        .count();
    if endpoint_hits % 2 == 1 {
        Location::Boundary
    } else {
        Location::Interior
    }
}

/// Locates `p` relative to the interior, boundary and exterior of `g`.
pub fn locate(p: Coord, g: &Geometry) -> Location {
    match g {
        Geometry::Point(_) | Geometry::MultiPoint(_) => {
            if g.points().iter().any(|&q| distance(p, q) <= EPSILON) {
                Location::Interior
            } else {
                Location::Exterior
            }
        }
        Geometry::LineString(_) | Geometry::MultiLineString(_) => locate_on_lines(p, g.lines()),
        Geometry::Polygon(_) | Geometry::MultiPolygon(_) => {
            let mut boundary = false;
            for poly in g.polygons() {
                match locate_in_polygon(p, poly) {
                    Location::Interior => return Location::Interior,
                    Location::Boundary => boundary = true,
                    Location::Exterior => {}
                }
            }
            if boundary {
                Location::Boundary
            } else {
                Location::Exterior
            }
        }
    }
}

/// Which locations the pieces of some linework take relative to a geometry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct PieceFlags {
    pub interior: bool,
    pub boundary: bool,
    pub exterior: bool,
}

/// Splits each segment at every contact with `target`'s linework and
/// vertices, then locates the midpoint of every piece.
pub(crate) fn classify_pieces(
    segments: impl IntoIterator<Item = (Coord, Coord)>,
    target: &Geometry,
) -> PieceFlags {
    let edges = target.edges();
    let mut vertices: Vec<Coord> = target.points().to_vec();
    vertices.extend(edges.iter().map(|e| e.0));
    let target_box = target.bbox();
    let mut flags = PieceFlags::default();
    for (a, b) in segments {
        let len = distance(a, b);
        if len == 0.0 {
            continue;
        }
        let seg_box = super::Rect::from_coords([&a, &b]);
        let mut ts = vec![0.0, 1.0];
        if !seg_box.disjoint(&target_box, EPSILON) {
            for &(q1, q2) in &edges {
                match segment_hit(a, b, q1, q2) {
                    SegmentHit::None => {}
                    SegmentHit::Point(t) => ts.push(t),
                    SegmentHit::Overlap(t0, t1) => ts.extend([t0, t1]),
                }
            }
            for &v in &vertices {
                if distance_to_segment(v, a, b) <= EPSILON {
                    ts.push(project(v, a, b).clamp(0.0, 1.0));
                }
            }
        }
        ts.sort_by(|x, y| x.total_cmp(y));
        ts.dedup_by(|x, y| (*x - *y).abs() * len <= EPSILON * 1e-3);
        for w in ts.windows(2) {
            let mid = lerp(a, b, (w[0] + w[1]) / 2.0);
            match locate(mid, target) {
                Location::Interior => flags.interior = true,
                Location::Boundary => flags.boundary = true,
                Location::Exterior => flags.exterior = true,
            }
        }
    }
    flags
}

/// A point strictly inside the polygon, found on a horizontal scanline
/// between two distinct vertex heights.
pub(crate) fn interior_point(poly: &Polygon) -> Coord {
    let mut ys: Vec<f64> = poly.rings().flat_map(|r| r.iter().map(|c| c.y)).collect();
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let (lo, hi) = ys
        .windows(2)
        .map(|w| (w[0], w[1]))
        .max_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0)))
        .unwrap_or((ys[0], ys[0]));
    let y = (lo + hi) / 2.0;
    let mut xs: Vec<f64> = poly
        .edges()
        .filter(|(a, b)| (a.y > y) != (b.y > y))
        .map(|(a, b)| a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y))
        .collect();
    xs.sort_by(f64::total_cmp);
    let best = xs
        .chunks_exact(2)
        .max_by(|a, b| (a[1] - a[0]).total_cmp(&(b[1] - b[0])))
        .map(|pair| (pair[0] + pair[1]) / 2.0)
        .unwrap_or(poly.exterior()[0].x);
    Coord::new(best, y)
}

/// No two non-adjacent edges touch and adjacent edges meet only at their shared vertex.
pub(crate) fn ring_is_simple(ring: &[Coord]) -> bool {
    let edges: Vec<(Coord, Coord)> = ring.windows(2).map(|w| (w[0], w[1])).collect();
    let n = edges.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (p1, p2) = edges[i];
            let (q1, q2) = edges[j];
            if adjacent {
                if let SegmentHit::Overlap(..) = segment_hit(p1, p2, q1, q2) {
                    return false;
                }
            } else if segments_touch(p1, p2, q1, q2) {
                return false;
            }
        }
    }
    true
}
