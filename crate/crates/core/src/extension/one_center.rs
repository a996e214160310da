//! Exact weighted planar 1-center: `min over z of max_i w_i |z - q_i|`.
//!
//! The objective is convex and its minimizer is pinned down by at most three
//! constraints, so enumerating the points where one, two or three weighted
//! distances balance and keeping the best is exact up to rounding.

// Distance matrices are indexed by point number on both axes.
#![allow(clippy::needless_range_loop)]

use crate::geometry::{cross, dot, GeneralizedCircle, PlanePoint};
use crate::lipschitz::MetricFunction;
use crate::metric_space::pow_alpha;

use super::{build_report, outside_point, ExtensionError, ExtensionReport, Rule};

/// Relative slack for calling a constraint active at the optimum.
const ACTIVE_RTOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct OneCenterSolution {
    pub z_star: PlanePoint,
    pub value: f64,
    /// Indices (into the input) of at most three constraints that alone
    /// determine the optimum.
    pub support: Vec<usize>,
}

/// `max_i w_i |z - q_i|`.
pub fn weighted_max(points: &[PlanePoint], weights: &[f64], z: PlanePoint) -> f64 {
    points
        .iter()
        .zip(weights)
        .map(|(q, w)| w * (z - q).norm())
        .fold(0.0, f64::max)
}

pub fn one_center(
    points: &[PlanePoint],
    weights: &[f64],
) -> Result<OneCenterSolution, ExtensionError> {
    if points.is_empty() {
        return Err(ExtensionError::EmptyInput);
    }
    if points.len() != weights.len() {
        return Err(ExtensionError::LengthMismatch {
            points: points.len(),
            weights: weights.len(),
        });
    }
    if let Some(&w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(ExtensionError::NonpositiveWeight(w));
    }
    if points
        .iter()
        .any(|p| !p.re.is_finite() || !p.im.is_finite())
    {
        return Err(ExtensionError::Geometry(
            crate::geometry::GeometryError::NonFinite,
        ));
    }

    // Coincident points only matter through their largest weight.
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..points.len() {
        match reps.iter_mut().find(|r| points[**r] == points[i]) {
            Some(r) if weights[i] > weights[*r] => *r = i,
            Some(_) => {}
            None => reps.push(i),
        }
    }
    let q: Vec<PlanePoint> = reps.iter().map(|&i| points[i]).collect();
    let w: Vec<f64> = reps.iter().map(|&i| weights[i]).collect();
    let m = q.len();

    let mut best = Candidate {
        z: q[0],
        value: weighted_max(&q, &w, q[0]),
        generators: vec![0],
    };
    let mut consider = |z: PlanePoint, generators: &[usize]| {
        if !z.re.is_finite() || !z.im.is_finite() {
            return;
        }
        let value = weighted_max(&q, &w, z);
        if value < best.value {
            best = Candidate {
                z,
                value,
                generators: generators.to_vec(),
            };
        }
    };

    for i in 1..m {
        consider(q[i], &[i]);
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let t = w[j] / (w[i] + w[j]);
            consider(q[i] + (q[j] - q[i]) * t, &[i, j]);
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let ij = GeneralizedCircle::equal_weighted_distance(q[i], w[i], q[j], w[j]);
            for k in (j + 1)..m {
                let jk = GeneralizedCircle::equal_weighted_distance(q[j], w[j], q[k], w[k]);
                for z in ij.intersect(&jk) {
                    consider(z, &[i, j, k]);
                }
            }
        }
    }

    let support = support_set(&q, &w, &best)
        .into_iter()
        .map(|s| reps[s])
        .collect();
    Ok(OneCenterSolution {
        z_star: best.z,
        value: best.value,
        support,
    })
}

struct Candidate {
    z: PlanePoint,
    value: f64,
    generators: Vec<usize>,
}

/// Smallest set of active constraints whose gradients have zero in their
/// convex hull (first-order optimality); falls back to the constraints that
/// generated the winning candidate.
fn support_set(q: &[PlanePoint], w: &[f64], best: &Candidate) -> Vec<usize> {
    if best.value == 0.0 {
        return vec![best.generators[0]];
    }
    let cutoff = best.value - ACTIVE_RTOL * (1.0 + best.value);
    let active: Vec<usize> = (0..q.len())
        .filter(|&i| w[i] * (best.z - q[i]).norm() >= cutoff)
        .collect();
    let dir = |i: usize| {
        let d = best.z - q[i];
        d / d.norm()
    };
    for (a, &i) in active.iter().enumerate() {
        for &j in &active[a + 1..] {
            if dot(dir(i), dir(j)) <= -1.0 + 1e-9 {
                return vec![i, j];
            }
        }
    }
    for (a, &i) in active.iter().enumerate() {
        for (b, &j) in active.iter().enumerate().skip(a + 1) {
            for &k in &active[b + 1..] {
                if origin_in_triangle(dir(i), dir(j), dir(k)) {
                    return vec![i, j, k];
                }
            }
        }
    }
    best.generators.clone()
}

fn origin_in_triangle(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> bool {
    let zero = PlanePoint::new(0.0, 0.0);
    let s1 = cross(b - a, zero - a);
    let s2 = cross(c - b, zero - b);
    let s3 = cross(a - c, zero - c);
    let eps = 1e-12;
    (s1 >= -eps && s2 >= -eps && s3 >= -eps) || (s1 <= eps && s2 <= eps && s3 <= eps)
}

/// The value at `e` that minimizes `p_alpha` of the extension: the weighted
/// 1-center of the known values with weights `1 / d(e, x)^alpha`.
pub fn optimal_one_point_extension(
    f0: &MetricFunction,
    e: &str,
) -> Result<ExtensionReport, ExtensionError> {
    let ei = outside_point(f0, e)?;
    let (points, weights) = extension_weights(f0, ei);
    let sol = one_center(&points, &weights)?;
    build_report(f0, vec![(ei, sol.z_star)], Rule::OneCenterOptimal)
}

/// Known values of `f0` and the weights `1 / d(e, x)^alpha`.
pub(crate) fn extension_weights(f0: &MetricFunction, e: usize) -> (Vec<PlanePoint>, Vec<f64>) {
    f0.values()
        .iter()
        .map(|(&i, &v)| (v, 1.0 / pow_alpha(f0.space().d(e, i), f0.alpha())))
        .unzip()
}
