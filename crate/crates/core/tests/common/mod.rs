//! Fixtures shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use lipext::geometry::Triangle;
use lipext::{discrete_apex, FiniteMetricSpace, MetricFunction, PlanePoint};

pub fn c(re: f64, im: f64) -> PlanePoint {
    PlanePoint::new(re, im)
}

pub fn equilateral() -> [PlanePoint; 3] {
    [c(0.0, 0.0), c(1.0, 0.0), c(0.5, 3f64.sqrt() / 2.0)]
}

pub fn two_over_root_three() -> f64 {
    2.0 / 3f64.sqrt()
}

/// `values` on the base points `x1..xn` of `discrete_apex(n, l)`, alpha 1.
pub fn on_apex(l: f64, values: &[PlanePoint]) -> MetricFunction {
    let space = Arc::new(discrete_apex(values.len(), l).unwrap());
    MetricFunction::new(
        space,
        1.0,
        values
            .iter()
            .enumerate()
            .map(|(k, &v)| (format!("x{}", k + 1), v)),
    )
    .unwrap()
}

/// Twice the area over the squared longest side; bounded away from zero
/// for triangles that are comfortably nondegenerate.
pub fn shape_quality(v: &[PlanePoint; 3]) -> f64 {
    let t = Triangle::new(v[0], v[1], v[2]);
    let longest = t.sides().into_iter().fold(0.0, f64::max);
    let [a, b, cc] = v;
    ((b - a).re * (cc - a).im - (b - a).im * (cc - a).re).abs() / (longest * longest)
}

/// Largest interior angle by the law of cosines, computed from scratch.
pub fn largest_angle_of(v: &[PlanePoint; 3]) -> f64 {
    (0..3)
        .map(|k| {
            let here = v[k];
            let u = v[(k + 1) % 3] - here;
            let w = v[(k + 2) % 3] - here;
            ((u.re * w.re + u.im * w.im) / (u.norm() * w.norm()))
                .clamp(-1.0, 1.0)
                .acos()
        })
        .fold(0.0, f64::max)
}

/// Euclidean distance matrix of planar points, labeled `p0, p1, ...`.
pub fn euclidean_space(points: &[PlanePoint]) -> FiniteMetricSpace {
    let dist = points
        .iter()
        .map(|p| points.iter().map(|q| (p - q).norm()).collect())
        .collect();
    let labels = (0..points.len()).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::new(labels, dist).unwrap()
}
