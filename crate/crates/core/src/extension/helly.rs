//! Disc-intersection feasibility for a one-point extension within a budget.
//!
//! The value at `e` keeps `p_alpha <= budget` exactly when it lies in every
//! disc `B_x = { z : |z - f0(x)| <= d(x, e)^alpha * budget }`. By Helly's
//! theorem this holds iff every three discs meet; here the intersection is
//! decided directly through the weighted 1-center.

use crate::geometry::{apollonius_locus, dot, PlanePoint, Region};
use crate::lipschitz::{lipschitz_number, MetricFunction};
use crate::metric_space::pow_alpha;

use super::one_center::{extension_weights, one_center, weighted_max};
use super::{outside_point, ExtensionError};

/// Relative slack on budgets and disc radii.
const FEASIBLE_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Feasibility {
    /// A value at `e` inside every disc.
    Feasible(PlanePoint),
    /// No value fits; `required_budget` is the least budget that would.
    Infeasible { required_budget: f64 },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn point(&self) -> Option<PlanePoint> {
        match *self {
            Feasibility::Feasible(z) => Some(z),
            Feasibility::Infeasible { .. } => None,
        }
    }
}

fn slack(budget: f64) -> f64 {
    FEASIBLE_RTOL * budget.max(1.0)
}

fn check_budget(budget: f64) -> Result<f64, ExtensionError> {
    if budget.is_finite() && budget >= 0.0 {
        Ok(budget)
    } else {
        Err(ExtensionError::BadBudget(budget))
    }
}

/// Whether some value at `e` keeps every ratio `|z - f0(x)| / d(x, e)^alpha`
/// within `budget` (default: `p_alpha(f0)`). With `bound_sup_norm` the value
/// must also satisfy `|z| <= ||f0||_inf`, so the sup norm is kept too.
pub fn helly_feasible(
    f0: &MetricFunction,
    e: &str,
    budget: Option<f64>,
    bound_sup_norm: bool,
) -> Result<Feasibility, ExtensionError> {
    let ei = outside_point(f0, e)?;
    let base = lipschitz_number(f0);
    let budget = check_budget(budget.unwrap_or(base.p_alpha))?;
    let (points, weights) = extension_weights(f0, ei);
    let sup = base.sup_norm;

    // The least budget for the plain disc family.
    let plain = one_center(&points, &weights)?;

    if budget == 0.0 {
        // Every disc is a point: feasible iff f0 takes a single value.
        let range = f0.range();
        return Ok(if range.len() == 1 {
            Feasibility::Feasible(points[0])
        } else {
            Feasibility::Infeasible {
                required_budget: if bound_sup_norm {
                    required_with_sup(&points, &weights, sup, plain.value)?
                } else {
                    plain.value
                },
            }
        });
    }

    if !bound_sup_norm {
        return Ok(if plain.value <= budget + slack(budget) {
            Feasibility::Feasible(plain.z_star)
        } else {
            Feasibility::Infeasible {
                required_budget: plain.value,
            }
        });
    }

    if sup == 0.0 {
        // f0 vanishes, so z = 0 lies in every disc and in B0 = {0}.
        return Ok(Feasibility::Feasible(PlanePoint::new(0.0, 0.0)));
    }
    match with_sup_disc(&points, &weights, sup, budget)? {
        Some(z) => Ok(Feasibility::Feasible(z)),
        None => Ok(Feasibility::Infeasible {
            required_budget: required_with_sup(&points, &weights, sup, plain.value)?,
        }),
    }
}

/// Adds `B0 = { |z| <= sup }` as the weighted point `0` with weight
/// `budget / sup`, so that its weighted distance is `<= budget` exactly on
/// `B0`.
fn with_sup_disc(
    points: &[PlanePoint],
    weights: &[f64],
    sup: f64,
    budget: f64,
) -> Result<Option<PlanePoint>, ExtensionError> {
    let mut p = points.to_vec();
    let mut w = weights.to_vec();
    p.push(PlanePoint::new(0.0, 0.0));
    w.push(budget / sup);
    let sol = one_center(&p, &w)?;
    Ok((sol.value <= budget + slack(budget)).then_some(sol.z_star))
}

/// Least budget for the family with `B0`, by bisection between the plain
/// optimum and the budget that `z = 0` needs.
fn required_with_sup(
    points: &[PlanePoint],
    weights: &[f64],
    sup: f64,
    plain: f64,
) -> Result<f64, ExtensionError> {
    let mut lo = plain;
    let mut hi = weighted_max(points, weights, PlanePoint::new(0.0, 0.0));
    if sup == 0.0 || hi <= lo {
        return Ok(hi.max(lo));
    }
    if with_sup_disc(points, weights, sup, lo)?.is_some() {
        return Ok(lo);
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if with_sup_disc(points, weights, sup, mid)?.is_some() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// A common point of the closed discs `(center, radius)`, if any (radii
/// within a relative `1e-9`).
pub fn discs_intersection(
    discs: &[(PlanePoint, f64)],
) -> Result<Option<PlanePoint>, ExtensionError> {
    if discs.is_empty() {
        return Err(ExtensionError::EmptyInput);
    }
    if let Some(&(_, r)) = discs.iter().find(|(_, r)| !(r.is_finite() && *r >= 0.0)) {
        return Err(ExtensionError::BadBudget(r));
    }
    let scale = discs
        .iter()
        .map(|(c, r)| c.norm().max(*r))
        .fold(1.0, f64::max);
    let inside = |z: PlanePoint| {
        discs
            .iter()
            .all(|(c, r)| (z - c).norm() <= r + FEASIBLE_RTOL * scale)
    };
    if let Some(&(c, _)) = discs.iter().find(|(_, r)| *r == 0.0) {
        return Ok(inside(c).then_some(c));
    }
    let centers: Vec<PlanePoint> = discs.iter().map(|(c, _)| *c).collect();
    let weights: Vec<f64> = discs.iter().map(|(_, r)| 1.0 / r).collect();
    let sol = one_center(&centers, &weights)?;
    Ok((sol.value <= 1.0 + FEASIBLE_RTOL).then_some(sol.z_star))
}

/// The regions `D_1, ..., D_n` of the chained criterion for the domain
/// listed in `order`, with `d_j = d(e, x_j)`:
///
/// * `D_j = { |z - f(x_j)| <= (d_j / d_{j+1})^alpha |z - f(x_{j+1})| }`
///   for `j < n`, a disc or a half-plane;
/// * `D_n = { |z - f(x_n)| <= d_n^alpha * budget }`.
///
/// `order` must list the domain exactly once with `d_j` nondecreasing;
/// otherwise some `D_j` is the outside of a disc and the criterion loses its
/// convexity. A `D_j` whose two values coincide is the whole plane and is
/// omitted.
pub fn chained_regions(
    f0: &MetricFunction,
    order: &[&str],
    e: &str,
    budget: Option<f64>,
) -> Result<Vec<Region>, ExtensionError> {
    let ei = outside_point(f0, e)?;
    let budget = check_budget(budget.unwrap_or_else(|| lipschitz_number(f0).p_alpha))?;
    let space = f0.space();
    let mut idx = Vec::with_capacity(order.len());
    for &label in order {
        let i = space
            .index_of(label)
            .ok_or_else(|| ExtensionError::UnknownLabel(label.to_owned()))?;
        if !f0.contains(i) {
            return Err(ExtensionError::BadOrdering(format!(
                "`{label}` is not in the domain"
            )));
        }
        if idx.contains(&i) {
            return Err(ExtensionError::BadOrdering(format!(
                "`{label}` is listed twice"
            )));
        }
        idx.push(i);
    }
    if idx.len() != f0.values().len() {
        return Err(ExtensionError::BadOrdering(format!(
            "{} labels listed for a domain of {}",
            idx.len(),
            f0.values().len()
        )));
    }
    let alpha = f0.alpha();
    let d: Vec<f64> = idx.iter().map(|&i| space.d(ei, i)).collect();
    if let Some(j) = (1..d.len()).find(|&j| d[j] < d[j - 1]) {
        return Err(ExtensionError::BadOrdering(format!(
            "d({e}, {}) = {} exceeds d({e}, {}) = {}",
            order[j - 1],
            d[j - 1],
            order[j],
            d[j]
        )));
    }
    let val = |k: usize| f0.values()[&idx[k]];
    let mut regions = Vec::with_capacity(idx.len());
    for j in 0..idx.len() - 1 {
        let k = pow_alpha(d[j] / d[j + 1], alpha);
        let (p1, p2) = (val(j), val(j + 1));
        if p1 == p2 {
            if k < 1.0 {
                regions.push(Region::Disc {
                    center: p1,
                    radius: 0.0,
                });
            }
            continue;
        }
        regions.push(apollonius_locus(p1, p2, k)?);
    }
    let n = idx.len() - 1;
    regions.push(Region::Disc {
        center: val(n),
        radius: pow_alpha(d[n], alpha) * budget,
    });
    Ok(regions)
}

/// A point of `D_1 ∩ ... ∩ D_n` (see [`chained_regions`]), if there is one.
/// At such a point the ratios `|z - f0(x_j)| / d_j^alpha` increase along the
/// order and end below the budget.
///
/// The intersection is compact and convex, so if it is nonempty its leftmost
/// point is either the leftmost point of one disc or a crossing of two
/// boundaries; those candidates are tested.
pub fn chained_feasible(
    f0: &MetricFunction,
    order: &[&str],
    e: &str,
    budget: Option<f64>,
) -> Result<Option<PlanePoint>, ExtensionError> {
    let regions = chained_regions(f0, order, e, budget)?;
    let scale = f0
        .values()
        .values()
        .map(|v| v.norm())
        .chain(regions.iter().filter_map(|r| match r {
            Region::Disc { radius, .. } => Some(*radius),
            _ => None,
        }))
        .fold(1.0, f64::max);
    let tol = FEASIBLE_RTOL * scale;
    let inside = |z: PlanePoint| regions.iter().all(|r| excess(r, z) <= tol);

    let mut candidates = Vec::new();
    for r in &regions {
        if let Region::Disc { center, radius } = *r {
            candidates.push(center - radius);
            candidates.push(center);
        }
    }
    for (a, ra) in regions.iter().enumerate() {
        for rb in &regions[a + 1..] {
            candidates.extend(ra.boundary().intersect(&rb.boundary()));
        }
    }
    Ok(candidates.into_iter().find(|&z| inside(z)))
}

/// How far `z` lies outside the region, in distance units (nonpositive
/// inside).
fn excess(region: &Region, z: PlanePoint) -> f64 {
    match *region {
        Region::Disc { center, radius } => (z - center).norm() - radius,
        Region::HalfPlane { normal, offset } => (dot(normal, z) - offset) / normal.norm(),
        Region::Apollonius { p1, p2, k } => (z - p1).norm() - k * (z - p2).norm(),
    }
}
