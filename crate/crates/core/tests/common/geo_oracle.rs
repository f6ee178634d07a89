//! Brute-force geometry: even-odd ray casting, exact segment distances, and
//! random simple polygons.

use std::f64::consts::TAU;

use evkg_core::geometry::{Coord, Polygon};
use evkg_core::Geometry;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Ring = Vec<(f64, f64)>;

/// Even-odd ray cast over every ring; boundary points give an arbitrary answer.
pub fn ray_cast(p: (f64, f64), rings: &[Ring]) -> bool {
    let mut inside = false;
    for ring in rings {
        for w in ring.windows(2) {
            let ((x1, y1), (x2, y2)) = (w[0], w[1]);
            if (y1 > p.1) != (y2 > p.1) {
                let x = x1 + (p.1 - y1) * (x2 - x1) / (y2 - y1);
                if p.0 < x {
                    inside = !inside;
                }
            }
        }
    }
    inside
}

pub fn point_segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn segments_intersect(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    d1 * d2 <= 0.0 && d3 * d4 <= 0.0
}

pub fn segment_segment_distance(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

pub fn boundary_distance(p: (f64, f64), rings: &[Ring]) -> f64 {
    rings
        .iter()
        .flat_map(|r| r.windows(2).map(move |w| point_segment_distance(p, w[0], w[1])))
        .fold(f64::INFINITY, f64::min)
}

fn star(rng: &mut ChaCha8Rng, center: (f64, f64), min_r: f64, max_r: f64) -> Ring {
    // jittered even angles keep every angular gap under 108 degrees
    let n = rng.gen_range(5..12);
    let offset = rng.gen_range(0.0..TAU);
    let mut ring: Ring = (0..n)
        .map(|i| {
            let a = offset + (i as f64 + rng.gen_range(0.0..0.5)) * TAU / n as f64;
            let r = rng.gen_range(min_r..max_r);
            (center.0 + r * a.cos(), center.1 + r * a.sin())
        })
        .collect();
    ring.push(ring[0]);
    ring
}

/// A star-shaped (hence simple) polygon, sometimes with a hole around the
/// same center that stays inside the shell.
pub fn random_polygon(rng: &mut ChaCha8Rng) -> Vec<Ring> {
    let center = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
    let shell = star(rng, center, 2.0, 6.0);
    // with radii >= 2 and gaps under 108 degrees the shell holds the disc of radius 2 cos(54) > 1.1
    if rng.gen_bool(0.3) {
        let mut hole = star(rng, center, 0.2, 0.9);
        hole.reverse();
        vec![shell, hole]
    } else {
        vec![shell]
    }
}

pub fn to_geometry(rings: &[Ring]) -> Geometry {
    let coords = |r: &Ring| r.iter().map(|&(x, y)| Coord::new(x, y)).collect::<Vec<_>>();
    let interiors = rings[1..].iter().map(coords).collect();
    Geometry::Polygon(Polygon::new(coords(&rings[0]), interiors).expect("star polygons are valid"))
}

/// Sides of the polygon seen by samples along a segment chain.
pub struct Sampled {
    pub inside: bool,
    pub outside: bool,
    /// Minimum distance from the chain to the polygon boundary.
    pub clearance: f64,
}

pub fn sample_line(points: &[(f64, f64)], rings: &[Ring]) -> Sampled {
    let mut s = Sampled {
        inside: false,
        outside: false,
        clearance: f64::INFINITY,
    };
    for w in points.windows(2) {
        for ring in rings {
            for e in ring.windows(2) {
                s.clearance = s.clearance.min(segment_segment_distance(w[0], w[1], e[0], e[1]));
            }
        }
        for i in 0..=2000 {
            let t = i as f64 / 2000.0;
            let p = (w[0].0 + t * (w[1].0 - w[0].0), w[0].1 + t * (w[1].1 - w[0].1));
            if boundary_distance(p, rings) < 1e-7 {
                continue;
            }
            if ray_cast(p, rings) {
                s.inside = true;
            } else {
                s.outside = true;
            }
        }
    }
    s
}
