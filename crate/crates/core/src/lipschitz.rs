//! Functions on finite metric spaces and their Lipschitz numbers.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::geometry::{convex_cycle, lex_cmp, PlanePoint, Triangle};
use crate::metric_space::{pow_alpha, FiniteMetricSpace, MetricError};

/// Two values closer than this count as the same point of the range.
pub const RANGE_ATOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LipschitzError {
    #[error("function has an empty domain")]
    EmptyDomain,
    #[error("exponent must be positive and finite, got {0}")]
    BadExponent(f64),
    #[error("non-finite value at `{0}`")]
    NonFiniteValue(String),
    #[error("`{0}` is already in the domain")]
    OverlappingDomain(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// A complex-valued function defined on part of a finite metric space,
/// paired with the Hölder exponent used to measure it.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricFunction {
    space: Arc<FiniteMetricSpace>,
    alpha: f64,
    values: BTreeMap<usize, PlanePoint>,
}

impl MetricFunction {
    pub fn new<I, S>(
        space: Arc<FiniteMetricSpace>,
        alpha: f64,
        values: I,
    ) -> Result<Self, LipschitzError>
    where
        I: IntoIterator<Item = (S, PlanePoint)>,
        S: AsRef<str>,
    {
        let mut map = BTreeMap::new();
        for (label, v) in values {
            let i = space.require(label.as_ref())?;
            if map.insert(i, v).is_some() {
                return Err(LipschitzError::OverlappingDomain(label.as_ref().to_owned()));
            }
        }
        Self::from_indexed(space, alpha, map)
    }

    pub fn from_indexed(
        space: Arc<FiniteMetricSpace>,
        alpha: f64,
        values: BTreeMap<usize, PlanePoint>,
    ) -> Result<Self, LipschitzError> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(LipschitzError::BadExponent(alpha));
        }
        if values.is_empty() {
            return Err(LipschitzError::EmptyDomain);
        }
        for (&i, v) in &values {
            if i >= space.len() {
                return Err(MetricError::IndexOutOfRange(i).into());
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(LipschitzError::NonFiniteValue(space.label(i).to_owned()));
            }
        }
        Ok(Self {
            space,
            alpha,
            values,
        })
    }

    pub fn space(&self) -> &Arc<FiniteMetricSpace> {
        &self.space
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn values(&self) -> &BTreeMap<usize, PlanePoint> {
        &self.values
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.keys().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.values.contains_key(&i)
    }

    pub fn value(&self, label: &str) -> Option<PlanePoint> {
        self.space
            .index_of(label)
            .and_then(|i| self.values.get(&i).copied())
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self, LipschitzError> {
        Self::from_indexed(self.space.clone(), alpha, self.values.clone())
    }

    /// Distinct values of the function, merged at [`RANGE_ATOL`], in
    /// lexicographic order.
    pub fn range(&self) -> Vec<PlanePoint> {
        let mut out: Vec<PlanePoint> = Vec::new();
        for v in self.values.values() {
            if out.iter().all(|u| (u - v).norm() > RANGE_ATOL) {
                out.push(*v);
            }
        }
        out.sort_by(lex_cmp);
        out
    }

    /// `d(x, y)^alpha`.
    #[inline]
    pub fn weighted_distance(&self, i: usize, j: usize) -> f64 {
        pow_alpha(self.space.d(i, j), self.alpha)
    }
}

/// `p_alpha`, the sup norm, and the norm `p_alpha + sup`.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzReport {
    pub p_alpha: f64,
    pub sup_norm: f64,
    pub alpha_norm: f64,
    /// Pair of labels attaining `p_alpha`; absent for a one-point domain.
    pub witness: Option<(String, String)>,
}

/// Exhaustive pair scan for `max |f(x) - f(y)| / d(x,y)^alpha`.
///
/// Ties keep the lexicographically first pair of domain indices.
pub fn lipschitz_number(f: &MetricFunction) -> LipschitzReport {
    let pts: Vec<(usize, PlanePoint)> = f.values.iter().map(|(&i, &v)| (i, v)).collect();
    let mut p = 0.0_f64;
    let mut witness = None;
    for (k, &(i, vi)) in pts.iter().enumerate() {
        for &(j, vj) in &pts[k + 1..] {
            let q = (vi - vj).norm() / f.weighted_distance(i, j);
            if witness.is_none() || q > p {
                p = q;
                witness = Some((i, j));
            }
        }
    }
    let sup_norm = pts.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    LipschitzReport {
        p_alpha: p,
        sup_norm,
        alpha_norm: p + sup_norm,
        witness: witness.map(|(i, j)| (f.space.label(i).to_owned(), f.space.label(j).to_owned())),
    }
}

/// Whether the range consists of exactly `n` distinct values that are the
/// vertices of a convex `n`-gon (a nondegenerate triangle for `n = 3`).
pub fn is_n_polygon(f: &MetricFunction, n: usize) -> bool {
    let range = f.range();
    if range.len() != n || n < 3 {
        return false;
    }
    if n == 3 {
        return !Triangle::new(range[0], range[1], range[2]).is_degenerate();
    }
    convex_cycle(&range).is_some()
}

/// `f0` with extra values; `f0`'s own values are untouched.
pub fn extend_with<I, S>(
    f0: &MetricFunction,
    assignments: I,
) -> Result<MetricFunction, LipschitzError>
where
    I: IntoIterator<Item = (S, PlanePoint)>,
    S: AsRef<str>,
{
    let mut values = f0.values.clone();
    for (label, v) in assignments {
        let i = f0.space.require(label.as_ref())?;
        if values.insert(i, v).is_some() {
            return Err(LipschitzError::OverlappingDomain(label.as_ref().to_owned()));
        }
    }
    MetricFunction::from_indexed(f0.space.clone(), f0.alpha, values)
}

/// Index-keyed variant of [`extend_with`].
pub fn extend_with_indexed<I>(
    f0: &MetricFunction,
    assignments: I,
) -> Result<MetricFunction, LipschitzError>
where
    I: IntoIterator<Item = (usize, PlanePoint)>,
{
    let mut values = f0.values.clone();
    for (i, v) in assignments {
        if i >= f0.space.len() {
            return Err(MetricError::IndexOutOfRange(i).into());
        }
        if values.insert(i, v).is_some() {
            return Err(LipschitzError::OverlappingDomain(
                f0.space.label(i).to_owned(),
            ));
        }
    }
    MetricFunction::from_indexed(f0.space.clone(), f0.alpha, values)
}
