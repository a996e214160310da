use std::f64::consts::PI;

use super::{cross, GeometryError, PlanePoint};

/// Vertices of a regular polygon centered at the origin, with its
/// circumradius `E` and largest diameter `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularPolygon {
    pub vertices: Vec<PlanePoint>,
    pub circumradius: f64,
    pub diameter: f64,
}

/// Regular `n`-gon with side `side`: `E = a / (2 sin(pi/n))`, and
/// `D = a / (2 sin(pi/2n))` for odd `n`, `D = 2E` for even `n`.
pub fn regular_polygon(n: usize, side: f64) -> Result<RegularPolygon, GeometryError> {
    if n < 3 {
        return Err(GeometryError::BadCount(n));
    }
    if !(side.is_finite() && side > 0.0) {
        return Err(GeometryError::BadSide(side));
    }
    let nf = n as f64;
    let circumradius = side / (2.0 * (PI / nf).sin());
    let diameter = if n.is_multiple_of(2) {
        2.0 * circumradius
    } else {
        side / (2.0 * (PI / (2.0 * nf)).sin())
    };
    let vertices = (0..n)
        .map(|k| PlanePoint::from_polar(circumradius, 2.0 * PI * k as f64 / nf))
        .collect();
    Ok(RegularPolygon {
        vertices,
        circumradius,
        diameter,
    })
}

/// If the points are in strictly convex position, returns their indices in
/// counter-clockwise order starting from the lexicographically smallest.
pub fn convex_cycle(points: &[PlanePoint]) -> Option<Vec<usize>> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let centroid = points.iter().sum::<PlanePoint>() / n as f64;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        (points[i] - centroid)
            .arg()
            .total_cmp(&(points[j] - centroid).arg())
    });
    let scale = points
        .iter()
        .map(|p| (p - centroid).norm())
        .fold(0.0, f64::max);
    let tol = 1e-12 * scale * scale;
    for k in 0..n {
        let a = points[order[k]];
        let b = points[order[(k + 1) % n]];
        let c = points[order[(k + 2) % n]];
        if cross(b - a, c - b) <= tol {
            return None;
        }
    }
    let start = (0..n)
        .min_by(|&i, &j| super::lex_cmp(&points[order[i]], &points[order[j]]))
        .unwrap();
    order.rotate_left(start);
    Some(order)
}

/// Interior angles of a convex polygon given in cyclic order.
pub fn interior_angles(cycle: &[PlanePoint]) -> Vec<f64> {
    let n = cycle.len();
    (0..n)
        .map(|k| {
            let prev = cycle[(k + n - 1) % n];
            let here = cycle[k];
            let next = cycle[(k + 1) % n];
            let u = prev - here;
            let v = next - here;
            let cos = (super::dot(u, v) / (u.norm() * v.norm())).clamp(-1.0, 1.0);
            cos.acos()
        })
        .collect()
}
