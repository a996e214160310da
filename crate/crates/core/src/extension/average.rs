//! The averaging extension: every outside point gets the mean of `f0`.

use std::collections::BTreeSet;

use crate::geometry::PlanePoint;
use crate::lipschitz::MetricFunction;
use crate::metric_space::{FiniteMetricSpace, MetricError, PointSubset};

use super::{build_report, ExtensionError, ExtensionReport, Rule};

/// Whether `d(t, y) >= d(y, z)` for every target `t` and all domain points
/// `y`, `z`: the condition under which averaging keeps `p_alpha`.
pub fn check_average_hypothesis(
    space: &FiniteMetricSpace,
    domain: &PointSubset<'_>,
    targets: &PointSubset<'_>,
) -> Result<bool, ExtensionError> {
    if !std::ptr::eq(domain.space(), space) || !std::ptr::eq(targets.space(), space) {
        return Err(MetricError::ForeignSubset.into());
    }
    if domain.is_empty() || targets.is_empty() {
        return Err(MetricError::EmptySet.into());
    }
    if let Some(&t) = targets.members().intersection(domain.members()).next() {
        return Err(ExtensionError::OverlappingDomain(space.label(t).to_owned()));
    }
    // For each y only the farthest z matters.
    for &y in domain.members() {
        let reach = domain
            .members()
            .iter()
            .map(|&z| space.d(y, z))
            .fold(0.0, f64::max);
        if targets.members().iter().any(|&t| space.d(t, y) < reach) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Assigns every target the mean of `f0` over its domain. The report's
/// `hypothesis` records [`check_average_hypothesis`]; when it holds,
/// `p_alpha` and the sup norm are unchanged.
pub fn average_extension(
    f0: &MetricFunction,
    targets: &[&str],
) -> Result<ExtensionReport, ExtensionError> {
    if targets.is_empty() {
        return Err(ExtensionError::EmptyTargets);
    }
    let space = f0.space();
    let mut idx = BTreeSet::new();
    for &t in targets {
        let i = space
            .index_of(t)
            .ok_or_else(|| ExtensionError::UnknownLabel(t.to_owned()))?;
        if f0.contains(i) {
            return Err(ExtensionError::OverlappingDomain(t.to_owned()));
        }
        idx.insert(i);
    }
    let values = f0.values();
    let mean = values.values().sum::<PlanePoint>() / values.len() as f64;
    let domain = space.subset_of_indices(f0.domain())?;
    let target_set = space.subset_of_indices(idx.iter().copied())?;
    let hypothesis = check_average_hypothesis(space, &domain, &target_set)?;
    let mut report = build_report(f0, idx.iter().map(|&i| (i, mean)).collect(), Rule::Average)?;
    report.hypothesis = Some(hypothesis);
    Ok(report)
}
