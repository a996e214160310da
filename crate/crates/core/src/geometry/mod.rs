//! Planar primitives: normal triangles, Apollonius loci, regular polygons.
//!
//! Function values live in the complex plane, so [`PlanePoint`] is a plain
//! `Complex64`.

mod polygon;
mod region;
mod triangle;

use thiserror::Error;

pub use num_complex::Complex64 as PlanePoint;

pub use polygon::{convex_cycle, interior_angles, regular_polygon, RegularPolygon};
pub use region::{apollonius_locus, region_membership, GeneralizedCircle, Region};
pub use triangle::{
    circumcenter, circumradius, classify_apex, is_right_or_obtuse, largest_angle, normalize,
    ApexClass, NormalTriangle, RigidMotion, Triangle,
};

/// Twice the area below this fraction of the squared longest side makes a
/// triangle degenerate.
pub const DEGENERACY_RTOL: f64 = 1e-12;

/// Slack on the disc membership test.
pub const MEMBERSHIP_ATOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate (collinear) triangle")]
    DegenerateTriangle,
    #[error("Apollonius locus needs two distinct points")]
    CoincidentPoints,
    #[error("Apollonius ratio must be positive, got {0}")]
    NonpositiveRatio(f64),
    #[error("polygon needs at least 3 vertices, got {0}")]
    BadCount(usize),
    #[error("polygon side must be positive, got {0}")]
    BadSide(f64),
    #[error("non-finite coordinate")]
    NonFinite,
}

/// `p` as `[re, im]`.
pub fn as_pair(p: PlanePoint) -> [f64; 2] {
    [p.re, p.im]
}

/// z-component of the cross product `a x b`.
#[inline]
pub fn cross(a: PlanePoint, b: PlanePoint) -> f64 {
    a.re * b.im - a.im * b.re
}

#[inline]
pub fn dot(a: PlanePoint, b: PlanePoint) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Lexicographic order on `(re, im)`.
pub fn lex_cmp(a: &PlanePoint, b: &PlanePoint) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}
