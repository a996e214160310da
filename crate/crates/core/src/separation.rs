//! Separating two sets by a Hölder function that is 0 on one and 1 on the
//! other.

use std::collections::BTreeMap;
use std::ptr;
use std::sync::Arc;

use thiserror::Error;

use crate::geometry::PlanePoint;
use crate::lipschitz::{LipschitzError, MetricFunction};
use crate::metric_space::{pow_alpha, set_distance, FiniteMetricSpace, MetricError, PointSubset};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeparationError {
    #[error("empty point set")]
    EmptySet,
    #[error("sets share the point `{0}`")]
    SetsOverlap(String),
    #[error("sets are at distance zero")]
    SetsTouch,
    #[error("exponent must lie in (0, 1], got {0}")]
    BadExponent(f64),
    #[error("subset belongs to a different space")]
    ForeignSubset,
    #[error(transparent)]
    Lipschitz(#[from] LipschitzError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Outcome of [`separate`].
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate {
    pub separable: bool,
    /// `d(A, B)`.
    pub gap: f64,
    pub alpha: f64,
    /// The separating function, real-valued (zero imaginary parts).
    pub function: Option<MetricFunction>,
    /// `1 / gap^alpha`, a bound on `p_alpha(function)`.
    pub lipschitz_bound: Option<f64>,
    /// Set when `alpha > 1`: a positive gap is then necessary but no longer
    /// known to be sufficient, so no function is constructed.
    pub note: Option<String>,
}

fn check_sets(
    space: &FiniteMetricSpace,
    a: &PointSubset<'_>,
    b: &PointSubset<'_>,
) -> Result<(), SeparationError> {
    if !ptr::eq(a.space(), space) || !ptr::eq(b.space(), space) {
        return Err(SeparationError::ForeignSubset);
    }
    if a.is_empty() || b.is_empty() {
        return Err(SeparationError::EmptySet);
    }
    if let Some(&i) = a.members().intersection(b.members()).next() {
        return Err(SeparationError::SetsOverlap(space.label(i).to_owned()));
    }
    Ok(())
}

/// `f(x) = d^alpha(x, A) / (d^alpha(x, A) + d^alpha(x, B))` on the whole
/// space: 0 on `A`, 1 on `B`, values in `[0, 1]` and
/// `p_alpha(f) <= 1 / d^alpha(A, B)`.
pub fn urysohn_function(
    space: Arc<FiniteMetricSpace>,
    a: &PointSubset<'_>,
    b: &PointSubset<'_>,
    alpha: f64,
) -> Result<MetricFunction, SeparationError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(SeparationError::BadExponent(alpha));
    }
    check_sets(&space, a, b)?;
    if set_distance(a, b)? == 0.0 {
        return Err(SeparationError::SetsTouch);
    }
    let mut values = BTreeMap::new();
    for x in 0..space.len() {
        let v = if a.contains(x) {
            0.0
        } else if b.contains(x) {
            1.0
        } else {
            let da = pow_alpha(space.point_to_set(x, a)?, alpha);
            let db = pow_alpha(space.point_to_set(x, b)?, alpha);
            da / (da + db)
        };
        values.insert(x, PlanePoint::new(v, 0.0));
    }
    Ok(MetricFunction::from_indexed(space, alpha, values)?)
}

/// Decides whether `A` and `B` can be separated by a Hölder function of
/// exponent `alpha`: for `alpha <= 1` exactly when `d(A, B) > 0`, and the
/// certificate then carries [`urysohn_function`] and its bound.
pub fn separate(
    space: Arc<FiniteMetricSpace>,
    a: &PointSubset<'_>,
    b: &PointSubset<'_>,
    alpha: f64,
) -> Result<SeparationCertificate, SeparationError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(SeparationError::BadExponent(alpha));
    }
    check_sets(&space, a, b)?;
    let gap = set_distance(a, b)?;
    let separable = gap > 0.0;
    if alpha > 1.0 {
        return Ok(SeparationCertificate {
            separable,
            gap,
            alpha,
            function: None,
            lipschitz_bound: None,
            note: Some(
                "alpha > 1: a positive gap is necessary for separation, \
                 but the distance-quotient function is only guaranteed for alpha <= 1"
                    .to_owned(),
            ),
        });
    }
    let (function, lipschitz_bound) = if separable {
        (
            Some(urysohn_function(space, a, b, alpha)?),
            Some(1.0 / pow_alpha(gap, alpha)),
        )
    } else {
        (None, None)
    };
    Ok(SeparationCertificate {
        separable,
        gap,
        alpha,
        function,
        lipschitz_bound,
        note: None,
    })
}

/// A space with the labels of its `A` and `B` sets.
pub type Counterexample = (Arc<FiniteMetricSpace>, Vec<String>, Vec<String>);

/// Points `1..=n` (labels `a1..`) and `k + 1/k` for `2 <= k <= n` (labels
/// `b2..`) on the real line, with `A` the integers and `B` the shifted
/// points: a finite piece of two closed sets at distance zero. The gap is
/// `1/n`.
///
/// (`k = 1` is left out because `1 + 1/1 = 2` is already an integer.)
pub fn truncated_counterexample(n: usize) -> Result<Counterexample, MetricError> {
    if n < 2 {
        return Err(MetricError::TooFewPoints { min: 2, got: n });
    }
    let a: Vec<String> = (1..=n).map(|k| format!("a{k}")).collect();
    let b: Vec<String> = (2..=n).map(|k| format!("b{k}")).collect();
    let coords: Vec<f64> = (1..=n)
        .map(|k| k as f64)
        .chain((2..=n).map(|k| k as f64 + 1.0 / k as f64))
        .collect();
    let labels = a.iter().chain(&b).cloned().collect();
    let space = FiniteMetricSpace::on_real_line(labels, &coords)?;
    Ok((Arc::new(space), a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lipschitz::lipschitz_number;
    use approx::assert_abs_diff_eq;

    fn path() -> Arc<FiniteMetricSpace> {
        Arc::new(
            FiniteMetricSpace::new(
                ["a", "m", "b"].iter().map(|s| s.to_string()).collect(),
                vec![
                    vec![0.0, 1.0, 2.0],
                    vec![1.0, 0.0, 1.0],
                    vec![2.0, 1.0, 0.0],
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn path_example() {
        let space = path();
        let a = space.subset(["a"]).unwrap();
        let b = space.subset(["b"]).unwrap();
        for (alpha, bound) in [(1.0, 0.5), (0.5, 1.0 / 2f64.sqrt())] {
            let cert = separate(space.clone(), &a, &b, alpha).unwrap();
            assert!(cert.separable);
            assert_eq!(cert.gap, 2.0);
            assert_abs_diff_eq!(cert.lipschitz_bound.unwrap(), bound, epsilon = 1e-15);
            let f = cert.function.unwrap();
            assert_eq!(f.value("a"), Some(PlanePoint::new(0.0, 0.0)));
            assert_eq!(f.value("b"), Some(PlanePoint::new(1.0, 0.0)));
            assert_eq!(f.value("m"), Some(PlanePoint::new(0.5, 0.0)));
            assert!(lipschitz_number(&f).p_alpha <= bound + 1e-12);
        }
    }

    #[test]
    fn errors() {
        let space = path();
        let a = space.subset(["a", "m"]).unwrap();
        let b = space.subset(["m", "b"]).unwrap();
        let empty = space.subset(Vec::<&str>::new()).unwrap();
        assert_eq!(
            separate(space.clone(), &a, &b, 1.0),
            Err(SeparationError::SetsOverlap("m".into()))
        );
        assert_eq!(
            separate(space.clone(), &a, &empty, 1.0),
            Err(SeparationError::EmptySet)
        );
        let b = space.subset(["b"]).unwrap();
        assert_eq!(
            urysohn_function(space.clone(), &a, &b, 1.5),
            Err(SeparationError::BadExponent(1.5))
        );
        let other = path();
        let foreign = other.subset(["b"]).unwrap();
        assert_eq!(
            separate(space.clone(), &a, &foreign, 1.0),
            Err(SeparationError::ForeignSubset)
        );
    }

    #[test]
    fn alpha_above_one_reports_gap_only() {
        let space = path();
        let a = space.subset(["a"]).unwrap();
        let b = space.subset(["b"]).unwrap();
        let cert = separate(space.clone(), &a, &b, 2.0).unwrap();
        assert!(cert.separable);
        assert!(cert.function.is_none() && cert.lipschitz_bound.is_none());
        assert!(cert.note.is_some());
    }

    #[test]
    fn counterexample_gap_shrinks() {
        for n in [10, 100] {
            let (space, a, b) = truncated_counterexample(n).unwrap();
            let a = space.subset(&a).unwrap();
            let b = space.subset(&b).unwrap();
            let cert = separate(space.clone(), &a, &b, 1.0).unwrap();
            assert_abs_diff_eq!(cert.gap, 1.0 / n as f64, epsilon = 1e-12);
            assert_abs_diff_eq!(
                cert.lipschitz_bound.unwrap(),
                n as f64,
                epsilon = 1e-9 * n as f64
            );
        }
    }
}
