//! Finite metric spaces backed by a validated distance matrix.

// Distance matrices are indexed by point number on both axes.
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap};
use std::ptr;

use thiserror::Error;

/// Relative tolerance applied to the triangle inequality.
pub const TRIANGLE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("distance matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("label count {labels} does not match matrix size {size}")]
    LabelCount { labels: usize, size: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("non-finite distance at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("d({0},{1}) != d({1},{0})")]
    NotSymmetric(usize, usize),
    #[error("negative distance at ({0}, {1})")]
    NegativeDistance(usize, usize),
    #[error("nonzero diagonal entry at {0}")]
    NonzeroDiagonal(usize),
    #[error("zero distance between distinct points {0} and {1}")]
    ZeroOffDiagonal(usize, usize),
    #[error("triangle inequality fails: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    TriangleViolation(usize, usize, usize),
    #[error("apex distance {0} is below 1/2")]
    ApexTooClose(f64),
    #[error("need at least {min} base points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("exponent {0} is outside (0, 1]")]
    BadExponent(f64),
    #[error("empty point set")]
    EmptySet,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("point index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subsets belong to different spaces")]
    ForeignSubset,
}

/// A labeled finite metric space.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    dist: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    /// Validates `dist` as a metric and attaches `labels` in matrix order.
    ///
    /// The matrix is never repaired: the first violated axiom is reported
    /// together with the offending indices.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = dist.len();
        if labels.len() != n {
            return Err(MetricError::LabelCount {
                labels: labels.len(),
                size: n,
            });
        }
        let index = index_labels(&labels)?;
        validate(&dist)?;
        Ok(Self {
            labels,
            index,
            dist,
        })
    }

    /// Validates a matrix and labels the points `x0, x1, ...`.
    pub fn from_matrix(dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let labels = (0..dist.len()).map(|i| format!("x{i}")).collect();
        Self::new(labels, dist)
    }

    /// Points on the real line with the distance `|s - t|`.
    ///
    /// This is a metric by construction, so only finiteness and
    /// distinctness are checked; the cubic triangle scan is skipped.
    pub fn on_real_line(labels: Vec<String>, coords: &[f64]) -> Result<Self, MetricError> {
        if labels.len() != coords.len() {
            return Err(MetricError::LabelCount {
                labels: labels.len(),
                size: coords.len(),
            });
        }
        let index = index_labels(&labels)?;
        let n = coords.len();
        let mut dist = vec![vec![0.0; n]; n];
        for i in 0..n {
            if !coords[i].is_finite() {
                return Err(MetricError::NonFinite(i, i));
            }
            for j in 0..i {
                let d = (coords[i] - coords[j]).abs();
                if d == 0.0 {
                    return Err(MetricError::ZeroOffDiagonal(j, i));
                }
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
        Ok(Self {
            labels,
            index,
            dist,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize, MetricError> {
        self.index_of(label)
            .ok_or_else(|| MetricError::UnknownLabel(label.to_owned()))
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    /// The subset of the given labels.
    pub fn subset<'a, I, S>(&'a self, labels: I) -> Result<PointSubset<'a>, MetricError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let members = labels
            .into_iter()
            .map(|l| self.require(l.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(PointSubset {
            space: self,
            members,
        })
    }

    pub fn subset_of_indices<I>(&self, indices: I) -> Result<PointSubset<'_>, MetricError>
    where
        I: IntoIterator<Item = usize>,
    {
        let members: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= self.len()) {
            return Err(MetricError::IndexOutOfRange(bad));
        }
        Ok(PointSubset {
            space: self,
            members,
        })
    }

    /// Every point of the space.
    pub fn all(&self) -> PointSubset<'_> {
        PointSubset {
            space: self,
            members: (0..self.len()).collect(),
        }
    }

    /// `d(x, M) = min over y in M of d(x, y)`.
    pub fn point_to_set(&self, x: usize, set: &PointSubset<'_>) -> Result<f64, MetricError> {
        if set.is_empty() {
            return Err(MetricError::EmptySet);
        }
        Ok(set
            .members
            .iter()
            .map(|&y| self.dist[x][y])
            .fold(f64::INFINITY, f64::min))
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, MetricError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(MetricError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

/// Checks the metric axioms on a square matrix.
pub fn validate(dist: &[Vec<f64>]) -> Result<(), MetricError> {
    let n = dist.len();
    for (i, row) in dist.iter().enumerate() {
        if row.len() != n {
            return Err(MetricError::NotSquare {
                row: i,
                len: row.len(),
                expected: n,
            });
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(MetricError::NonFinite(i, j));
        }
    }
    for i in 0..n {
        if dist[i][i] != 0.0 {
            return Err(MetricError::NonzeroDiagonal(i));
        }
        for j in 0..n {
            if dist[i][j] != dist[j][i] {
                return Err(MetricError::NotSymmetric(i.min(j), i.max(j)));
            }
            if dist[i][j] < 0.0 {
                return Err(MetricError::NegativeDistance(i, j));
            }
            if i != j && dist[i][j] == 0.0 {
                return Err(MetricError::ZeroOffDiagonal(i.min(j), i.max(j)));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = dist[i][j];
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let via = dist[i][k] + dist[k][j];
                if dij > via * (1.0 + TRIANGLE_RTOL) {
                    return Err(MetricError::TriangleViolation(i, k, j));
                }
            }
        }
    }
    Ok(())
}

/// The space of Theorem-style "discrete apex" metrics: `n` base points at
/// mutual distance 1 and an apex `e` at distance `l` from each of them.
///
/// Base points are labeled `x1..xn`; the apex is the last label, `e`.
pub fn discrete_apex(n: usize, l: f64) -> Result<FiniteMetricSpace, MetricError> {
    if n < 2 {
        return Err(MetricError::TooFewPoints { min: 2, got: n });
    }
    if !l.is_finite() || l < 0.5 {
        return Err(MetricError::ApexTooClose(l));
    }
    let mut dist = vec![vec![1.0; n + 1]; n + 1];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0.0;
        if i < n {
            row[n] = l;
        }
    }
    for j in 0..n {
        dist[n][j] = l;
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    labels.push("e".to_owned());
    FiniteMetricSpace::new(labels, dist)
}

/// The discrete-apex matrix without validation, for exercising the
/// `l < 1/2` failure mode.
pub fn discrete_apex_matrix(n: usize, l: f64) -> Vec<Vec<f64>> {
    let mut dist = vec![vec![1.0; n + 1]; n + 1];
    for i in 0..=n {
        dist[i][i] = 0.0;
        if i < n {
            dist[i][n] = l;
            dist[n][i] = l;
        }
    }
    dist
}

/// Entrywise `d^alpha`, which is again a metric for `0 < alpha <= 1`.
pub fn power_metric(
    space: &FiniteMetricSpace,
    alpha: f64,
) -> Result<FiniteMetricSpace, MetricError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(MetricError::BadExponent(alpha));
    }
    let dist = space
        .dist
        .iter()
        .map(|row| row.iter().map(|&d| pow_alpha(d, alpha)).collect())
        .collect();
    FiniteMetricSpace::new(space.labels.clone(), dist)
}

/// `d^alpha` with the identity exponent short-circuited so that `alpha = 1`
/// is bit-exact.
#[inline]
pub fn pow_alpha(d: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        d
    } else {
        d.powf(alpha)
    }
}

/// A set of points of one space.
#[derive(Debug, Clone)]
pub struct PointSubset<'a> {
    space: &'a FiniteMetricSpace,
    members: BTreeSet<usize>,
}

impl<'a> PointSubset<'a> {
    pub fn space(&self) -> &'a FiniteMetricSpace {
        self.space
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn is_disjoint(&self, other: &PointSubset<'_>) -> bool {
        self.members.is_disjoint(&other.members)
    }

    /// Every point of the space not in this set.
    pub fn complement(&self) -> PointSubset<'a> {
        PointSubset {
            space: self.space,
            members: (0..self.space.len())
                .filter(|i| !self.members.contains(i))
                .collect(),
        }
    }

    pub fn labels(&self) -> Vec<&'a str> {
        self.members.iter().map(|&i| self.space.label(i)).collect()
    }
}

/// `d(A, B) = min over a in A, b in B of d(a, b)`; zero iff the sets meet.
pub fn set_distance(a: &PointSubset<'_>, b: &PointSubset<'_>) -> Result<f64, MetricError> {
    if !ptr::eq(a.space, b.space) {
        return Err(MetricError::ForeignSubset);
    }
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptySet);
    }
    let space = a.space;
    let mut best = f64::INFINITY;
    for &i in &a.members {
        for &j in &b.members {
            best = best.min(space.d(i, j));
        }
    }
    Ok(best)
}

/// Largest pairwise distance inside the set.
pub fn diameter(m: &PointSubset<'_>) -> Result<f64, MetricError> {
    if m.is_empty() {
        return Err(MetricError::EmptySet);
    }
    let members: Vec<usize> = m.members.iter().copied().collect();
    let mut best = 0.0_f64;
    for (k, &i) in members.iter().enumerate() {
        for &j in &members[k + 1..] {
            best = best.max(m.space.d(i, j));
        }
    }
    Ok(best)
}
