//! Property tests for the invariants each module promises.

// Distance matrices are indexed by point number on both axes.
#![allow(clippy::needless_range_loop)]

mod common;

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use proptest::prelude::*;

use lipext::extension::{chained_feasible, one_center, polygon_extension, triangle_extension};
use lipext::geometry::{
    apollonius_locus, circumcenter, circumradius, classify_apex, is_right_or_obtuse, largest_angle,
    normalize, regular_polygon, ApexClass, Region, Triangle,
};
use lipext::lipschitz::extend_with;
use lipext::metric_space::{discrete_apex_matrix, power_metric, validate};
use lipext::oracle::{grid_minimax, GridSpec};
use lipext::{
    diameter, discrete_apex, helly_feasible, lipschitz_number, optimal_one_point_extension,
    separate, set_distance, FiniteMetricSpace, MetricFunction, PlanePoint,
};

use common::{c, equilateral, euclidean_space, on_apex, shape_quality, two_over_root_three};

fn point(half: f64) -> impl Strategy<Value = PlanePoint> {
    (-half..half, -half..half).prop_map(|(x, y)| c(x, y))
}

fn points(half: f64, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<PlanePoint>> {
    prop::collection::vec(point(half), n)
}

fn triangle() -> impl Strategy<Value = [PlanePoint; 3]> {
    (point(2.0), point(2.0), point(2.0))
        .prop_map(|(a, b, cc)| [a, b, cc])
        .prop_filter("nondegenerate", |v| shape_quality(v) >= 1e-3)
}

/// Rotation by `angle`, optional reflection, then translation.
fn rigid(z: PlanePoint, angle: f64, reflect: bool, shift: PlanePoint) -> PlanePoint {
    let z = if reflect { z.conj() } else { z };
    z * PlanePoint::from_polar(1.0, angle) + shift
}

/// A random metric: Euclidean distances of planar points raised to a power
/// in (0, 1].
fn metric_space() -> impl Strategy<Value = FiniteMetricSpace> {
    (points(3.0, 2..=7), 0.3f64..=1.0)
        .prop_filter("distinct points", |(pts, _)| {
            pts.iter()
                .enumerate()
                .all(|(i, p)| pts[..i].iter().all(|q| (p - q).norm() > 1e-6))
        })
        .prop_map(|(pts, alpha)| power_metric(&euclidean_space(&pts), alpha).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // ---- metric_space ----

    #[test]
    fn power_metric_stays_metric(space in metric_space(), alpha in 0.01f64..=1.0) {
        let powered = power_metric(&space, alpha).unwrap();
        prop_assert!(validate(powered.matrix()).is_ok());
    }

    #[test]
    fn discrete_apex_valid_iff_half(n in 2usize..8, l in 0.3f64..1.5) {
        prop_assert_eq!(validate(&discrete_apex_matrix(n, l)).is_ok(), l >= 0.5);
        prop_assert_eq!(discrete_apex(n, l).is_ok(), l >= 0.5);
    }

    #[test]
    fn set_distance_and_diameter(space in metric_space(), mask in prop::collection::vec(0u8..3, 7)) {
        let n = space.len();
        let a: Vec<usize> = (0..n).filter(|&i| mask[i] == 0 || i == 0).collect();
        let b: Vec<usize> = (1..n).filter(|&i| mask[i] == 1 || i == n - 1).collect();
        let sa = space.subset_of_indices(a.iter().copied()).unwrap();
        let sb = space.subset_of_indices(b.iter().copied()).unwrap();
        let gap = set_distance(&sa, &sb).unwrap();
        for &i in &a {
            for &j in &b {
                prop_assert!(gap <= space.d(i, j));
            }
        }
        let whole = space.all();
        prop_assert!(diameter(&sa).unwrap() <= diameter(&whole).unwrap());
    }

    // ---- plane_geometry ----

    #[test]
    fn normalize_invariants(v in triangle(), angle in 0.0..2.0 * PI, reflect: bool, shift in point(5.0)) {
        let t = Triangle::new(v[0], v[1], v[2]);
        let nt = normalize(&t).unwrap();
        let r = nt.base;
        prop_assert!(nt.apex.im > 0.0);
        prop_assert!(nt.apex.re <= r / 2.0 + 1e-12);
        prop_assert!(nt.apex.norm() <= r * (1.0 + 1e-12));
        prop_assert!((nt.apex - r).norm() <= r * (1.0 + 1e-12));
        let image = nt.vertices();
        for (k, &src) in nt.permutation.iter().enumerate() {
            prop_assert!((nt.motion.apply(v[src]) - image[k]).norm() < 1e-9);
        }
        let mut before = t.sides();
        let mut after = Triangle::new(image[0], image[1], image[2]).sides();
        before.sort_by(f64::total_cmp);
        after.sort_by(f64::total_cmp);
        for k in 0..3 {
            prop_assert!((before[k] - after[k]).abs() < 1e-9);
        }

        let moved = v.map(|p| rigid(p, angle, reflect, shift));
        let nm = normalize(&Triangle::new(moved[0], moved[1], moved[2])).unwrap();
        prop_assert!((nm.base - r).abs() < 1e-9);
        prop_assert!((nm.apex - nt.apex).norm() < 1e-9);

        let again = normalize(&Triangle::new(image[0], image[1], image[2])).unwrap();
        prop_assert!((again.apex - nt.apex).norm() < 1e-9);
    }

    #[test]
    fn circumcenter_and_angles(v in triangle()) {
        let nt = normalize(&Triangle::new(v[0], v[1], v[2])).unwrap();
        let cc = circumcenter(&nt);
        let radius = circumradius(&nt);
        for p in nt.vertices() {
            prop_assert!(((p - cc).norm() - radius).abs() < 1e-9 * (1.0 + radius));
        }
        let theta = largest_angle(&nt);
        prop_assert!((PI / 3.0 - 1e-12..PI).contains(&theta));
        // Away from the right angle, the three tests agree.
        if (theta - FRAC_PI_2).abs() > 1e-9 {
            prop_assert_eq!(theta <= FRAC_PI_2, cc.im >= 0.0);
            prop_assert_eq!(classify_apex(&nt) == ApexClass::InD1, theta >= FRAC_PI_2);
            prop_assert_eq!(is_right_or_obtuse(&nt), theta >= FRAC_PI_2);
        }
    }

    #[test]
    fn circumradius_decreases_in_angle(r in 0.1f64..5.0, t1 in 0.01f64..FRAC_PI_2, t2 in 0.01f64..FRAC_PI_2) {
        prop_assume!((t1 - t2).abs() > 1e-9);
        let e = |t: f64| r / (2.0 * t.sin());
        prop_assert_eq!(t1 < t2, e(t1) > e(t2));
    }

    #[test]
    fn apollonius_boundary(p1 in point(5.0), p2 in point(5.0), log_k in -1.5f64..1.5) {
        prop_assume!((p1 - p2).norm() > 1e-3);
        let k = 10f64.powf(log_k);
        let region = apollonius_locus(p1, p2, k).unwrap();
        let scale = 1.0 + (p1 - p2).norm();
        for z in region.boundary_samples(64, 10.0 * scale) {
            prop_assert!(((z - p1).norm() - k * (z - p2).norm()).abs() < 1e-9 * scale * (1.0 + k) * (1.0 + z.norm()));
        }
    }

    #[test]
    fn regular_polygon_diameter(n in 3usize..20, side in 0.1f64..5.0) {
        let poly = regular_polygon(n, side).unwrap();
        let mut far = 0.0_f64;
        for (i, p) in poly.vertices.iter().enumerate() {
            prop_assert!((p.norm() - poly.circumradius).abs() < 1e-9 * poly.circumradius);
            for q in &poly.vertices[..i] {
                let d = (p - q).norm();
                prop_assert!(d <= poly.diameter * (1.0 + 1e-12));
                far = far.max(d);
            }
        }
        prop_assert!((far - poly.diameter).abs() < 1e-9 * poly.diameter);
    }

    // ---- lipschitz_core ----

    #[test]
    fn seminorm(space in metric_space(), f in points(2.0, 7..=7), g in points(2.0, 7..=7), s in point(3.0)) {
        let space = Arc::new(space);
        let n = space.len();
        let make = |vals: &[PlanePoint]| {
            MetricFunction::new(space.clone(), 0.7, (0..n).map(|i| (space.label(i).to_owned(), vals[i]))).unwrap()
        };
        let sum: Vec<PlanePoint> = (0..n).map(|i| f[i] + g[i]).collect();
        let scaled: Vec<PlanePoint> = (0..n).map(|i| f[i] * s).collect();
        let (pf, pg) = (lipschitz_number(&make(&f)).p_alpha, lipschitz_number(&make(&g)).p_alpha);
        prop_assert!(lipschitz_number(&make(&sum)).p_alpha <= (pf + pg) * (1.0 + 1e-12));
        prop_assert!((lipschitz_number(&make(&scaled)).p_alpha - s.norm() * pf).abs() <= 1e-9 * (1.0 + s.norm() * pf));
        let constant = vec![s; n];
        prop_assert_eq!(lipschitz_number(&make(&constant)).p_alpha, 0.0);
        let report = lipschitz_number(&make(&f));
        prop_assert_eq!(report.alpha_norm, report.p_alpha + report.sup_norm);
    }

    #[test]
    fn rigid_motion_of_range_keeps_number(v in triangle(), assign in prop::collection::vec(0usize..3, 3..8),
                                          angle in 0.0..2.0 * PI, reflect: bool, shift in point(5.0)) {
        let space = Arc::new(discrete_apex(assign.len(), 0.8).unwrap());
        let make = |tri: [PlanePoint; 3]| {
            MetricFunction::new(space.clone(), 1.0, assign.iter().enumerate().map(|(k, &j)| (format!("x{}", k + 1), tri[j]))).unwrap()
        };
        let nt = normalize(&Triangle::new(v[0], v[1], v[2])).unwrap();
        let p0 = lipschitz_number(&make(v)).p_alpha;
        prop_assert!((lipschitz_number(&make(v.map(|p| nt.motion.apply(p)))).p_alpha - p0).abs() < 1e-9);
        prop_assert!((lipschitz_number(&make(v.map(|p| rigid(p, angle, reflect, shift)))).p_alpha - p0).abs() < 1e-9);
    }

    #[test]
    fn extension_never_lowers_number(space in metric_space(), vals in points(2.0, 7..=7), z in point(3.0)) {
        let space = Arc::new(space);
        let n = space.len();
        let f0 = MetricFunction::new(space.clone(), 1.0, (0..n - 1).map(|i| (space.label(i).to_owned(), vals[i]))).unwrap();
        let f = extend_with(&f0, [(space.label(n - 1), z)]).unwrap();
        prop_assert!(lipschitz_number(&f).p_alpha >= lipschitz_number(&f0).p_alpha);
    }

    // ---- extension_engine ----

    #[test]
    fn triangle_rule_bounds(v in triangle(), l in 0.5f64..3.0) {
        let f0 = on_apex(l, &v);
        let closed = triangle_extension(&f0, "e").unwrap();
        let best = optimal_one_point_extension(&f0, "e").unwrap();
        prop_assert!(closed.raw_ratio().unwrap() <= two_over_root_three() + 1e-9);
        prop_assert!(closed.new_p_alpha >= best.new_p_alpha - 1e-9);
        if best.ratio == Some(1.0) {
            prop_assert_eq!(closed.ratio, Some(1.0));
        }
        if closed.hypothesis == Some(true) {
            prop_assert_eq!(closed.ratio, Some(1.0));
        }
    }

    #[test]
    fn optimal_extension_is_optimal(space in metric_space(), vals in points(2.0, 7..=7), alt in points(3.0, 16..=16)) {
        let space = Arc::new(space);
        let n = space.len();
        let f0 = MetricFunction::new(space.clone(), 0.8, (0..n - 1).map(|i| (space.label(i).to_owned(), vals[i]))).unwrap();
        let e = space.label(n - 1);
        let best = optimal_one_point_extension(&f0, e).unwrap();
        prop_assert!(best.new_p_alpha >= best.base_p_alpha);
        for z in alt {
            let f = extend_with(&f0, [(e, z)]).unwrap();
            prop_assert!(lipschitz_number(&f).p_alpha >= best.new_p_alpha - 1e-9);
        }
    }

    #[test]
    fn one_center_certificate(pts in points(1.0, 1..=8), w in prop::collection::vec(0.3f64..3.0, 8)) {
        let w = &w[..pts.len()];
        let sol = one_center(&pts, w).unwrap();
        let at = pts.iter().zip(w).map(|(q, wi)| wi * (sol.z_star - q).norm()).fold(0.0, f64::max);
        prop_assert!((at - sol.value).abs() <= 1e-9);
        prop_assert!(!sol.support.is_empty() && sol.support.len() <= 3);
        for &i in &sol.support {
            prop_assert!(w[i] * (sol.z_star - pts[i]).norm() >= sol.value - 1e-7 * (1.0 + sol.value));
        }
        let sub_p: Vec<_> = sol.support.iter().map(|&i| pts[i]).collect();
        let sub_w: Vec<_> = sol.support.iter().map(|&i| w[i]).collect();
        prop_assert!((one_center(&sub_p, &sub_w).unwrap().value - sol.value).abs() <= 1e-9 * (1.0 + sol.value));
        let grid = grid_minimax(&pts, w, &GridSpec::around(&pts)).unwrap();
        prop_assert!((grid.value - sol.value).abs() <= grid.error_bound);
    }

    #[test]
    fn helly_monotone(vals in points(1.0, 2..=6), l in prop::collection::vec(0.5f64..2.0, 6), budgets in prop::collection::vec(0.0f64..3.0, 5)) {
        // Distances 1 between domain points, d(e, x_i) = l_i <= 2 keeps the
        // triangle inequality.
        let n = vals.len();
        let mut dist = vec![vec![1.0; n + 1]; n + 1];
        for i in 0..=n {
            dist[i][i] = 0.0;
        }
        for i in 0..n {
            dist[i][n] = l[i];
            dist[n][i] = l[i];
        }
        let space = FiniteMetricSpace::from_matrix(dist);
        prop_assume!(space.is_ok());
        let space = Arc::new(space.unwrap());
        let f0 = MetricFunction::new(space.clone(), 1.0, (0..n).map(|i| (space.label(i).to_owned(), vals[i]))).unwrap();
        let e = space.label(n);
        let mut b = budgets.clone();
        b.sort_by(f64::total_cmp);
        let mut was = false;
        for budget in b {
            let now = helly_feasible(&f0, e, Some(budget), false).unwrap().is_feasible();
            prop_assert!(now || !was);
            was = now;
        }
    }

    #[test]
    fn chained_point_satisfies_chain(vals in points(1.0, 2..=5), lift in 1.0f64..1.5) {
        let n = vals.len();
        // d(e, x_j) nondecreasing in j.
        let mut dist = vec![vec![1.0; n + 1]; n + 1];
        for i in 0..=n {
            dist[i][i] = 0.0;
        }
        for i in 0..n {
            let d = 0.6 * lift.powi(i as i32);
            dist[i][n] = d;
            dist[n][i] = d;
        }
        let space = FiniteMetricSpace::from_matrix(dist);
        prop_assume!(space.is_ok());
        let space = Arc::new(space.unwrap());
        let f0 = MetricFunction::new(space.clone(), 1.0, (0..n).map(|i| (space.label(i).to_owned(), vals[i]))).unwrap();
        let order: Vec<&str> = (0..n).map(|i| space.label(i)).collect();
        let e = space.label(n);
        let budget = 3.0 * lipschitz_number(&f0).p_alpha;
        if let Some(z) = chained_feasible(&f0, &order, e, Some(budget)).unwrap() {
            let ratios: Vec<f64> = (0..n).map(|i| (z - vals[i]).norm() / space.d(n, i)).collect();
            for w in ratios.windows(2) {
                prop_assert!(w[0] <= w[1] + 1e-7 * (1.0 + w[1]));
            }
            prop_assert!(ratios[n - 1] <= budget + 1e-7 * (1.0 + budget));
        }
    }

    // ---- separation ----

    #[test]
    fn urysohn_clauses(space in metric_space(), mask in prop::collection::vec(0u8..3, 7), half: bool) {
        let space = Arc::new(space);
        let n = space.len();
        let side = |i: usize| if i == 0 { 0 } else if i == n - 1 { 1 } else { mask[i] };
        let a = space.subset_of_indices((0..n).filter(|&i| side(i) == 0)).unwrap();
        let b = space.subset_of_indices((0..n).filter(|&i| side(i) == 1)).unwrap();
        let alpha = if half { 0.5 } else { 1.0 };
        let cert = separate(space.clone(), &a, &b, alpha).unwrap();
        prop_assert!(cert.separable);
        let f = cert.function.as_ref().unwrap();
        for i in 0..n {
            let v = f.values()[&i].re;
            prop_assert!((0.0..=1.0).contains(&v));
            match side(i) {
                0 => prop_assert_eq!(v, 0.0),
                1 => prop_assert_eq!(v, 1.0),
                _ => {}
            }
        }
        prop_assert!(lipschitz_number(f).p_alpha <= cert.lipschitz_bound.unwrap() * (1.0 + 1e-12));
    }

    // ---- oracle ----

    #[test]
    fn grid_refinement_monotone(pts in points(1.0, 1..=6), w in prop::collection::vec(0.3f64..3.0, 6)) {
        let w = &w[..pts.len()];
        let mut last = (f64::INFINITY, f64::INFINITY);
        for rounds in 1..=4 {
            let spec = GridSpec { rounds, ..GridSpec::around(&pts) };
            let r = grid_minimax(&pts, w, &spec).unwrap();
            prop_assert!(r.value <= last.0);
            prop_assert!(r.error_bound < last.1);
            last = (r.value, r.error_bound);
        }
    }
}

#[test]
fn regular_polygon_ratios_follow_the_closed_form() {
    for n in 3..=12 {
        for l in [0.5, 0.55, 1.0 / 3f64.sqrt(), 0.75, 1.0, 2.0] {
            let poly = regular_polygon(n, 1.0).unwrap();
            let ratio = polygon_extension(&on_apex(l, &poly.vertices), "e")
                .unwrap()
                .report
                .raw_ratio()
                .unwrap();
            let expected = if n % 2 == 0 {
                1.0
            } else {
                (1.0 / (2.0 * l * (PI / (2.0 * n as f64)).cos())).max(1.0)
            };
            assert!(
                (ratio - expected).abs() < 1e-12,
                "n={n} l={l}: {ratio} vs {expected}"
            );
            assert!(ratio <= two_over_root_three() + 1e-12);
        }
    }
}

#[test]
fn equilateral_closed_form_matches_optimum() {
    let f0 = on_apex(0.5, &equilateral());
    let closed = triangle_extension(&f0, "e").unwrap();
    let best = optimal_one_point_extension(&f0, "e").unwrap();
    assert!((closed.new_p_alpha - best.new_p_alpha).abs() < 1e-9);
}

#[test]
fn disc_regions_are_discs() {
    // k != 1 gives a disc; k = 1 a half-plane.
    assert!(matches!(
        apollonius_locus(c(0.0, 0.0), c(1.0, 0.0), 0.5).unwrap(),
        Region::Disc { .. }
    ));
    assert!(matches!(
        apollonius_locus(c(0.0, 0.0), c(1.0, 0.0), 1.0).unwrap(),
        Region::HalfPlane { .. }
    ));
}
