//! Closed-form one-point extensions over discrete-apex metrics: the
//! triangle rule (base midpoint or circumcenter), the tetragon diagonal rule
//! and the regular-polygon center rule.

use std::f64::consts::PI;

use crate::geometry::{
    circumcenter, classify_apex, convex_cycle, interior_angles, largest_angle, normalize,
    ApexClass, PlanePoint, Triangle,
};
use crate::lipschitz::MetricFunction;

use super::{build_report, outside_point, ExtensionError, ExtensionReport, Rule, ANGLE_ATOL};

/// Relative slack when recognizing unit base distances and a constant apex
/// distance.
const SHAPE_RTOL: f64 = 1e-12;

/// Relative slack when recognizing a regular polygon.
const REGULAR_RTOL: f64 = 1e-6;

/// The apex distance `l` of a discrete-apex-shaped configuration: every two
/// domain points at distance 1, `e` at one common distance `l` from all of
/// them. Also enforces `alpha = 1` and `l >= 1/2`.
pub fn apex_distance(f0: &MetricFunction, e: &str) -> Result<f64, ExtensionError> {
    let ei = outside_point(f0, e)?;
    if f0.alpha() != 1.0 {
        return Err(ExtensionError::AlphaNotOne(f0.alpha()));
    }
    let space = f0.space();
    let domain: Vec<usize> = f0.domain().collect();
    for (k, &i) in domain.iter().enumerate() {
        for &j in &domain[k + 1..] {
            let d = space.d(i, j);
            if (d - 1.0).abs() > SHAPE_RTOL {
                return Err(ExtensionError::WrongMetricShape(format!(
                    "d({}, {}) = {d}, expected 1",
                    space.label(i),
                    space.label(j)
                )));
            }
        }
    }
    let l = space.d(ei, domain[0]);
    for &i in &domain[1..] {
        let d = space.d(ei, i);
        if (d - l).abs() > SHAPE_RTOL * l {
            return Err(ExtensionError::WrongMetricShape(format!(
                "d({e}, {}) = {d} differs from d({e}, {}) = {l}",
                space.label(i),
                space.label(domain[0])
            )));
        }
    }
    if l < 0.5 {
        return Err(ExtensionError::ApexTooClose(l));
    }
    Ok(l)
}

/// `arcsin(1/(2l))`, the angle a range needs for an extension at apex
/// distance `l` to keep the Lipschitz number.
fn critical_angle(l: f64) -> f64 {
    (1.0 / (2.0 * l)).min(1.0).asin()
}

fn range_triangle(f0: &MetricFunction) -> Result<Triangle, ExtensionError> {
    let range = f0.range();
    if range.len() != 3 {
        return Err(ExtensionError::NotATriangle);
    }
    let t = Triangle::new(range[0], range[1], range[2]);
    if t.is_degenerate() {
        return Err(ExtensionError::NotATriangle);
    }
    Ok(t)
}

/// Whether the largest angle of the triangle range is at least
/// `arcsin(1/(2l)) - ANGLE_ATOL`, the condition for an extension over an
/// apex at distance `l` with no increase of the Lipschitz number.
pub fn equality_criterion(f0: &MetricFunction, l: f64) -> Result<bool, ExtensionError> {
    if !(l.is_finite() && l >= 0.5) {
        return Err(ExtensionError::ApexTooClose(l));
    }
    let nt = normalize(&range_triangle(f0)?)?;
    Ok(largest_angle(&nt) >= critical_angle(l) - ANGLE_ATOL)
}

/// Normalizes the triangle range, takes the base midpoint when the apex lies
/// in the disc on the base (a right or obtuse triangle) and the circumcenter
/// otherwise, and moves the choice back to the original position.
///
/// The Lipschitz number grows by at most `2/sqrt(3)`, and not at all when
/// [`equality_criterion`] holds.
pub fn triangle_extension(f0: &MetricFunction, e: &str) -> Result<ExtensionReport, ExtensionError> {
    let ei = outside_point(f0, e)?;
    let t = range_triangle(f0)?;
    let l = apex_distance(f0, e)?;
    let nt = normalize(&t)?;
    let local = match classify_apex(&nt) {
        ApexClass::InD1 => nt.base_midpoint(),
        ApexClass::InD2 => circumcenter(&nt),
    };
    let mut report = build_report(
        f0,
        vec![(ei, nt.motion.invert(local))],
        Rule::TriangleClosedForm,
    )?;
    report.hypothesis = Some(largest_angle(&nt) >= critical_angle(l) - ANGLE_ATOL);
    Ok(report)
}

/// For a convex tetragon range `ABCD` whose angles at one pair of opposite
/// vertices are both at least `arcsin(1/(2l))`, assigns `e` the midpoint of
/// the other diagonal.
///
/// When both pairs qualify, the pair through the lexicographically smallest
/// vertex is used.
pub fn tetragon_extension(f0: &MetricFunction, e: &str) -> Result<ExtensionReport, ExtensionError> {
    let ei = outside_point(f0, e)?;
    let range = f0.range();
    if range.len() != 4 {
        return Err(ExtensionError::NotATetragon);
    }
    let cycle = convex_cycle(&range).ok_or(ExtensionError::NotATetragon)?;
    let l = apex_distance(f0, e)?;
    let v: Vec<PlanePoint> = cycle.iter().map(|&i| range[i]).collect();
    let angles = interior_angles(&v);
    let threshold = critical_angle(l);
    let wide = |i: usize, j: usize| {
        angles[i] >= threshold - ANGLE_ATOL && angles[j] >= threshold - ANGLE_ATOL
    };
    // The cycle starts at the lexicographically smallest vertex, so the
    // pair (0, 2) wins ties.
    let value = if wide(0, 2) {
        (v[1] + v[3]) / 2.0
    } else if wide(1, 3) {
        (v[0] + v[2]) / 2.0
    } else {
        return Err(ExtensionError::AngleConditionFails { threshold, angles });
    };
    let mut report = build_report(f0, vec![(ei, value)], Rule::TetragonDiagonal)?;
    report.hypothesis = Some(true);
    Ok(report)
}

/// Result of [`polygon_extension`] with the measured polygon constants.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonExtension {
    pub report: ExtensionReport,
    pub n: usize,
    /// Mean side length `a`.
    pub side: f64,
    /// Largest distance `E` from the center to a vertex.
    pub circumradius: f64,
    /// Largest distance `D` between two vertices.
    pub diameter: f64,
}

impl PolygonExtension {
    /// `max(D, E/l)`, which equals the extension's Lipschitz number.
    pub fn predicted_p(&self, l: f64) -> f64 {
        self.diameter.max(self.circumradius / l)
    }
}

/// For a regular `n`-gon range, assigns `e` the polygon's center. The new
/// Lipschitz number is `max(D, E/l)`; it is unchanged when `n` is even or
/// `n >= pi / (2 arccos(1/(2l)))`.
pub fn polygon_extension(f0: &MetricFunction, e: &str) -> Result<PolygonExtension, ExtensionError> {
    let ei = outside_point(f0, e)?;
    let range = f0.range();
    let n = range.len();
    if n < 3 {
        return Err(ExtensionError::NotRegularPolygon(format!(
            "range has {n} distinct values"
        )));
    }
    let cycle = convex_cycle(&range).ok_or_else(|| {
        ExtensionError::NotRegularPolygon("range is not in convex position".into())
    })?;
    apex_distance(f0, e)?;
    let v: Vec<PlanePoint> = cycle.iter().map(|&i| range[i]).collect();
    let center = v.iter().sum::<PlanePoint>() / n as f64;

    let radii: Vec<f64> = v.iter().map(|p| (p - center).norm()).collect();
    let gaps: Vec<f64> = (0..n).map(|k| (v[(k + 1) % n] - v[k]).norm()).collect();
    let spread = |xs: &[f64]| {
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(0.0, f64::max);
        (hi - lo) / hi
    };
    if spread(&radii) > REGULAR_RTOL {
        return Err(ExtensionError::NotRegularPolygon(
            "unequal radii about the centroid".into(),
        ));
    }
    if spread(&gaps) > REGULAR_RTOL {
        return Err(ExtensionError::NotRegularPolygon("unequal sides".into()));
    }

    let mut diameter = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            diameter = diameter.max((v[i] - v[j]).norm());
        }
    }
    let report = build_report(f0, vec![(ei, center)], Rule::PolygonCenter)?;
    Ok(PolygonExtension {
        report,
        n,
        side: gaps.iter().sum::<f64>() / n as f64,
        circumradius: radii.iter().copied().fold(0.0, f64::max),
        diameter,
    })
}

/// Whether the center rule keeps the Lipschitz number of a regular `n`-gon
/// at apex distance `l`: `n` even, or `n >= pi / (2 arccos(1/(2l)))`.
pub fn polygon_preserves(n: usize, l: f64) -> bool {
    if n.is_multiple_of(2) {
        return true;
    }
    let acos = (1.0 / (2.0 * l)).min(1.0).acos();
    if acos == 0.0 {
        return false;
    }
    n as f64 >= PI / (2.0 * acos) * (1.0 - 1e-9)
}
