use super::locate::{
    classify_pieces, distance_to_segment, interior_point, lerp, locate, segment_hit, segments_touch,
    Location, SegmentHit,
};
use super::{Coord, Dimension, Geometry, GeometryError, EPSILON};

/// `a` lies in the closure of `b` and the interiors of `a` and `b` meet.
pub fn sf_within(a: &Geometry, b: &Geometry) -> bool {
    if a.bbox().disjoint(&b.bbox(), EPSILON) {
        return false;
    }
    match a.dimension() {
        Dimension::Puntal => {
            let locs: Vec<Location> = a.points().iter().map(|&p| locate(p, b)).collect();
            !locs.contains(&Location::Exterior) && locs.contains(&Location::Interior)
        }
        Dimension::Lineal => {
            if b.dimension() == Dimension::Puntal {
                return false;
            }
            let flags = classify_pieces(a.edges(), b);
            !flags.exterior && flags.interior
        }
        Dimension::Polygonal => {
            if b.dimension() != Dimension::Polygonal {
                return false;
            }
            a.polygons().iter().all(|pa| {
                let pa_geom = Geometry::Polygon(pa.clone());
                let own = classify_pieces(pa.edges(), b);
                if own.exterior {
                    return false;
                }
                // b's boundary may not run through a's interior
                if classify_pieces(b.edges(), &pa_geom).interior {
                    return false;
                }
                locate(interior_point(pa), b) == Location::Interior
            })
        }
    }
}

pub fn sf_contains(a: &Geometry, b: &Geometry) -> bool {
    sf_within(b, a)
}

/// The geometries share at least one point; boundary contact counts.
pub fn sf_intersects(a: &Geometry, b: &Geometry) -> bool {
    if a.bbox().disjoint(&b.bbox(), EPSILON) {
        return false;
    }
    let (ea, eb) = (a.edges(), b.edges());
    for &(p1, p2) in &ea {
        for &(q1, q2) in &eb {
            if segments_touch(p1, p2, q1, q2)
                || distance_to_segment(p1, q1, q2) <= EPSILON
                || distance_to_segment(p2, q1, q2) <= EPSILON
                || distance_to_segment(q1, p1, p2) <= EPSILON
                || distance_to_segment(q2, p1, p2) <= EPSILON
            {
                return true;
            }
        }
    }
    a.representative_points()
        .into_iter()
        .any(|p| locate(p, b) != Location::Exterior)
        || b.representative_points()
            .into_iter()
            .any(|p| locate(p, a) != Location::Exterior)
}

/// Simple-features "crosses" for line/polygon (either order) and line/line.
pub fn sf_crosses(a: &Geometry, b: &Geometry) -> Result<bool, GeometryError> {
    match (a.dimension(), b.dimension()) {
        (Dimension::Lineal, Dimension::Polygonal) => {
            if a.bbox().disjoint(&b.bbox(), EPSILON) {
                return Ok(false);
            }
            let flags = classify_pieces(a.edges(), b);
            Ok(flags.interior && flags.exterior)
        }
        (Dimension::Polygonal, Dimension::Lineal) => sf_crosses(b, a),
        (Dimension::Lineal, Dimension::Lineal) => {
            if a.bbox().disjoint(&b.bbox(), EPSILON) {
                return Ok(false);
            }
            // a one-dimensional overlap is not a crossing
            if classify_pieces(a.edges(), b).interior {
                return Ok(false);
            }
            let hits = crossing_points(a, b);
            Ok(hits
                .into_iter()
                .any(|p| locate(p, a) == Location::Interior && locate(p, b) == Location::Interior))
        }
        _ => Err(GeometryError::Unsupported {
            predicate: "sfCrosses",
            left: a.kind(),
            right: b.kind(),
        }),
    }
}

fn crossing_points(a: &Geometry, b: &Geometry) -> Vec<Coord> {
    let mut out = Vec::new();
    for (p1, p2) in a.edges() {
        for (q1, q2) in b.edges() {
            match segment_hit(p1, p2, q1, q2) {
                SegmentHit::None => {}
                SegmentHit::Point(t) => out.push(lerp(p1, p2, t)),
                SegmentHit::Overlap(t0, t1) => {
                    out.push(lerp(p1, p2, t0));
                    out.push(lerp(p1, p2, t1));
                }
            }
        }
    }
    out
}
