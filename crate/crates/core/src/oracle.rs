//! Brute-force references for certifying the exact solvers.
//!
//! Nothing in the library's extension rules calls into this module; it backs
//! the test suites and the `oracle-check` command.

use thiserror::Error;

use crate::geometry::PlanePoint;
use crate::lipschitz::{lipschitz_number, MetricFunction};
use crate::metric_space::pow_alpha;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("grid box does not contain point {0}")]
    BoxTooSmall(PlanePoint),
    #[error("invalid grid spec: {0}")]
    InvalidSpec(&'static str),
    #[error("points and weights must be nonempty, of equal length, weights positive")]
    BadInput,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("`{0}` is already in the domain")]
    AlreadyDefined(String),
}

/// Square search box and its refinement schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub center: PlanePoint,
    pub half_width: f64,
    /// Samples per side in each round.
    pub resolution: usize,
    pub rounds: usize,
}

impl GridSpec {
    pub const DEFAULT_RESOLUTION: usize = 64;
    pub const DEFAULT_ROUNDS: usize = 6;

    /// Bounding box of `points` inflated by 10%, at the default schedule.
    pub fn around(points: &[PlanePoint]) -> Self {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo.re = lo.re.min(p.re);
            lo.im = lo.im.min(p.im);
            hi.re = hi.re.max(p.re);
            hi.im = hi.im.max(p.im);
        }
        let half = ((hi.re - lo.re).max(hi.im - lo.im) / 2.0) * 1.1;
        Self {
            center: (lo + hi) / 2.0,
            half_width: if half > 0.0 { half } else { 1.0 },
            resolution: Self::DEFAULT_RESOLUTION,
            rounds: Self::DEFAULT_ROUNDS,
        }
    }

    /// Sample spacing in the last round.
    pub fn final_cell(&self) -> f64 {
        let first = 2.0 * self.half_width / self.resolution as f64;
        first * (2.0 / self.resolution as f64).powi(self.rounds as i32 - 1)
    }

    fn check(&self) -> Result<(), OracleError> {
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(OracleError::InvalidSpec("half_width must be positive"));
        }
        if self.resolution < 8 {
            return Err(OracleError::InvalidSpec("resolution must be at least 8"));
        }
        if self.rounds < 1 {
            return Err(OracleError::InvalidSpec("need at least one round"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridResult {
    pub z: PlanePoint,
    pub value: f64,
    /// `max weight * final cell diagonal`.
    pub error_bound: f64,
}

/// Grid search for `min over z of max_i w_i |z - q_i|`.
///
/// Each column of the grid is minimized by its own refining 1-D grid, and
/// the column minima are refined the same way. After every round the search
/// interval shrinks to the two cells around the best sample, which keeps a
/// minimizer inside because both the objective and its column minimum are
/// convex.
pub fn grid_minimax(
    points: &[PlanePoint],
    weights: &[f64],
    spec: &GridSpec,
) -> Result<GridResult, OracleError> {
    spec.check()?;
    if points.is_empty()
        || points.len() != weights.len()
        || weights.iter().any(|w| !(w.is_finite() && *w > 0.0))
    {
        return Err(OracleError::BadInput);
    }
    let h = spec.half_width;
    for p in points {
        let d = p - spec.center;
        if d.re.abs() > h || d.im.abs() > h {
            return Err(OracleError::BoxTooSmall(*p));
        }
    }
    let g = |z: PlanePoint| {
        points
            .iter()
            .zip(weights)
            .map(|(q, w)| w * (z - q).norm())
            .fold(0.0, f64::max)
    };
    let y_range = (spec.center.im - h, spec.center.im + h);
    let column = |x: f64| {
        let (y, v) = refine_1d(y_range, spec, |y| g(PlanePoint::new(x, y)));
        (PlanePoint::new(x, y), v)
    };
    let mut best_z = spec.center;
    let mut best_v = f64::INFINITY;
    refine_1d((spec.center.re - h, spec.center.re + h), spec, |x| {
        let (z, v) = column(x);
        if v < best_v {
            best_v = v;
            best_z = z;
        }
        v
    });
    let w_max = weights.iter().copied().fold(0.0, f64::max);
    Ok(GridResult {
        z: best_z,
        value: best_v,
        error_bound: w_max * spec.final_cell() * std::f64::consts::SQRT_2,
    })
}

/// Minimizes a convex function on an interval by repeated sampling at cell
/// centers. Returns the best sample seen; its value never increases across
/// rounds.
fn refine_1d(range: (f64, f64), spec: &GridSpec, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let (mut lo, mut hi) = range;
    let mut best = (lo, f64::INFINITY);
    for _ in 0..spec.rounds {
        let cell = (hi - lo) / spec.resolution as f64;
        let mut round_best = (lo, f64::INFINITY);
        for k in 0..spec.resolution {
            let t = lo + (k as f64 + 0.5) * cell;
            let v = f(t);
            if v < round_best.1 {
                round_best = (t, v);
            }
        }
        if round_best.1 < best.1 {
            best = round_best;
        }
        lo = round_best.0 - cell;
        hi = round_best.0 + cell;
    }
    best
}

/// Whether `candidate` at `e` is within the grid's error bound of the best
/// achievable `p_alpha` for a one-point extension of `f0`.
pub fn grid_extension_check(
    f0: &MetricFunction,
    e: &str,
    candidate: PlanePoint,
    spec: Option<GridSpec>,
) -> Result<bool, OracleError> {
    let space = f0.space();
    let ei = space
        .index_of(e)
        .ok_or_else(|| OracleError::UnknownLabel(e.to_owned()))?;
    if f0.contains(ei) {
        return Err(OracleError::AlreadyDefined(e.to_owned()));
    }
    let (points, weights): (Vec<_>, Vec<_>) = f0
        .values()
        .iter()
        .map(|(&i, &v)| (v, 1.0 / pow_alpha(space.d(ei, i), f0.alpha())))
        .unzip();
    let spec = spec.unwrap_or_else(|| GridSpec::around(&points));
    let base = lipschitz_number(f0).p_alpha;
    let at_candidate = points
        .iter()
        .zip(&weights)
        .map(|(q, w)| w * (candidate - q).norm())
        .fold(base, f64::max);
    let grid = grid_minimax(&points, &weights, &spec)?;
    Ok(base.max(grid.value) >= at_candidate - grid.error_bound)
}

/// A point common to all closed discs `(center, radius)`, found by testing
/// every disc's leftmost point and every pairwise circle intersection.
///
/// If the intersection is nonempty its leftmost point is one of these, so
/// `None` means the discs have no common point (up to `tol`).
pub fn discs_common_point(discs: &[(PlanePoint, f64)], tol: f64) -> Option<PlanePoint> {
    let inside = |z: PlanePoint| discs.iter().all(|(c, r)| (z - c).norm() <= r + tol);
    for (c, r) in discs {
        let z = c - r;
        if inside(z) {
            return Some(z);
        }
    }
    for i in 0..discs.len() {
        for j in (i + 1)..discs.len() {
            let (c1, r1) = discs[i];
            let (c2, r2) = discs[j];
            let d = (c2 - c1).norm();
            if d == 0.0 || d > r1 + r2 + tol || d < (r1 - r2).abs() - tol {
                continue;
            }
            let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
            let h = (r1 * r1 - a * a).max(0.0).sqrt();
            let u = (c2 - c1) / d;
            let mid = c1 + u * a;
            let perp = PlanePoint::new(-u.im, u.re);
            for z in [mid + perp * h, mid - perp * h] {
                if inside(z) {
                    return Some(z);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric_space::discrete_apex;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> PlanePoint {
        PlanePoint::new(re, im)
    }

    fn equilateral() -> [PlanePoint; 3] {
        [c(0.0, 0.0), c(1.0, 0.0), c(0.5, 3f64.sqrt() / 2.0)]
    }

    #[test]
    fn equilateral_grid_value() {
        let pts = equilateral();
        let mut spec = GridSpec::around(&pts);
        spec.rounds = 5;
        let r = grid_minimax(&pts, &[1.0; 3], &spec).unwrap();
        assert!(r.error_bound < 1e-4);
        assert!((r.value - 1.0 / 3f64.sqrt()).abs() <= r.error_bound);
    }

    #[test]
    fn default_error_bound_is_small() {
        let pts = equilateral();
        let r = grid_minimax(&pts, &[2.0; 3], &GridSpec::around(&pts)).unwrap();
        assert!(r.error_bound <= 1e-5);
    }

    #[test]
    fn one_point() {
        let r = grid_minimax(&[c(0.3, 0.3)], &[1.0], &GridSpec::around(&[c(0.3, 0.3)])).unwrap();
        assert!(r.value <= r.error_bound);
    }

    #[test]
    fn box_must_contain_points() {
        let pts = equilateral();
        let spec = GridSpec {
            center: c(0.0, 0.0),
            half_width: 0.5,
            resolution: 16,
            rounds: 2,
        };
        assert!(matches!(
            grid_minimax(&pts, &[1.0; 3], &spec),
            Err(OracleError::BoxTooSmall(_))
        ));
        let bad = GridSpec {
            resolution: 4,
            ..GridSpec::around(&pts)
        };
        assert!(matches!(
            grid_minimax(&pts, &[1.0; 3], &bad),
            Err(OracleError::InvalidSpec(_))
        ));
    }

    #[test]
    fn refinement_is_monotone() {
        let pts = [c(0.0, 0.0), c(1.0, 0.2), c(0.3, 0.9), c(0.8, 0.7)];
        let w = [1.0, 1.5, 0.7, 1.1];
        let mut last = f64::INFINITY;
        let mut last_bound = f64::INFINITY;
        for rounds in 1..=6 {
            let spec = GridSpec {
                rounds,
                ..GridSpec::around(&pts)
            };
            let r = grid_minimax(&pts, &w, &spec).unwrap();
            assert!(r.value <= last);
            assert!(r.error_bound < last_bound / 16.0);
            last = r.value;
            last_bound = r.error_bound;
        }
    }

    fn equilateral_f0() -> MetricFunction {
        let space = Arc::new(discrete_apex(3, 0.5).unwrap());
        let [a, b, cc] = equilateral();
        MetricFunction::new(space, 1.0, [("x1", a), ("x2", b), ("x3", cc)]).unwrap()
    }

    #[test]
    fn extension_check_accepts_circumcenter_and_rejects_vertex() {
        let f0 = equilateral_f0();
        assert!(grid_extension_check(&f0, "e", c(0.5, 3f64.sqrt() / 6.0), None).unwrap());
        assert!(!grid_extension_check(&f0, "e", c(0.0, 0.0), None).unwrap());
        assert!(matches!(
            grid_extension_check(&f0, "x1", c(0.0, 0.0), None),
            Err(OracleError::AlreadyDefined(_))
        ));
    }

    #[test]
    fn extension_check_constant() {
        let space = Arc::new(discrete_apex(3, 1.0).unwrap());
        let v = c(1.0, 2.0);
        let f0 = MetricFunction::new(space, 1.0, [("x1", v), ("x2", v), ("x3", v)]).unwrap();
        assert!(grid_extension_check(&f0, "e", v, None).unwrap());
    }

    #[test]
    fn common_point_of_discs() {
        let discs = [(c(0.0, 0.0), 1.0), (c(1.5, 0.0), 1.0), (c(0.75, 1.0), 0.8)];
        let z = discs_common_point(&discs, 1e-12).unwrap();
        for (cc, r) in discs {
            assert!((z - cc).norm() <= r + 1e-12);
        }
        let apart = [(c(0.0, 0.0), 1.0), (c(3.0, 0.0), 1.0)];
        assert!(discs_common_point(&apart, 1e-12).is_none());
        let nested = [(c(0.0, 0.0), 5.0), (c(1.0, 0.0), 0.5)];
        assert!(discs_common_point(&nested, 1e-12).is_some());
    }
}
