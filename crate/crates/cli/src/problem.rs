//! The JSON problem file: a metric space, a partial function on it, and the
//! points or sets the commands act on.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use lipext::{discrete_apex, FiniteMetricSpace, MetricError, MetricFunction, PlanePoint};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A planar value as `[re, im]`.
pub type Pair = [f64; 2];

pub fn pair(z: PlanePoint) -> Pair {
    [z.re, z.im]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub alpha: f64,
    /// Point labels in matrix order. Optional for `discrete_apex`, whose
    /// labels are `x1..xn, e`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    pub metric: MetricSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub f0: BTreeMap<String, Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extend_at: Option<Targets>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Sets>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricSpec {
    Matrix { d: Vec<Vec<f64>> },
    DiscreteApex { n: usize, l: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Targets {
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sets {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

/// A loaded problem with a validated space.
#[derive(Debug, Clone)]
pub struct Problem {
    pub alpha: f64,
    pub space: Arc<FiniteMetricSpace>,
    pub file: ProblemFile,
}

impl Problem {
    pub fn load(path: &Path, alpha_override: Option<f64>) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::schema("Io", format!("cannot read {}: {e}", path.display())))?;
        let file: ProblemFile =
            serde_json::from_str(&text).map_err(|e| CliError::schema("Schema", e.to_string()))?;
        Self::from_file(file, alpha_override)
    }

    pub fn from_file(file: ProblemFile, alpha_override: Option<f64>) -> Result<Self, CliError> {
        let alpha = alpha_override.unwrap_or(file.alpha);
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(CliError::schema(
                "BadExponent",
                format!("alpha must be positive, got {alpha}"),
            ));
        }
        let space = match &file.metric {
            MetricSpec::Matrix { d } => FiniteMetricSpace::new(file.points.clone(), d.clone())
                .map_err(|e| with_labels(e, &file.points))?,
            MetricSpec::DiscreteApex { n, l } => {
                let space = discrete_apex(*n, *l)?;
                if !file.points.is_empty() && file.points != space.labels() {
                    return Err(CliError::schema(
                        "PointsMismatch",
                        format!("discrete_apex points are {:?}", space.labels()),
                    ));
                }
                space
            }
        };
        Ok(Self {
            alpha,
            space: Arc::new(space),
            file,
        })
    }

    /// `f0` as a function; it must be defined somewhere.
    pub fn function(&self) -> Result<MetricFunction, CliError> {
        if self.file.f0.is_empty() {
            return Err(CliError::schema("MissingField", "this command needs `f0`"));
        }
        let values = self
            .file
            .f0
            .iter()
            .map(|(k, v)| (k.as_str(), PlanePoint::new(v[0], v[1])));
        Ok(MetricFunction::new(self.space.clone(), self.alpha, values)?)
    }

    pub fn targets(&self) -> Result<Vec<&str>, CliError> {
        match &self.file.extend_at {
            None => Err(CliError::schema(
                "MissingField",
                "this command needs `extend_at`",
            )),
            Some(Targets::One(t)) => Ok(vec![t.as_str()]),
            Some(Targets::Many(ts)) => Ok(ts.iter().map(String::as_str).collect()),
        }
    }

    /// The one point a one-point command extends to.
    pub fn single_target(&self) -> Result<&str, CliError> {
        match self.targets()?.as_slice() {
            [t] => Ok(t),
            ts => Err(CliError::domain(
                "ExpectedSingleTarget",
                format!(
                    "this method extends to one point, `extend_at` lists {}",
                    ts.len()
                ),
            )),
        }
    }

    pub fn sets(&self) -> Result<&Sets, CliError> {
        self.file
            .sets
            .as_ref()
            .ok_or_else(|| CliError::schema("MissingField", "this command needs `sets`"))
    }
}

/// Attaches the offending labels to a triangle-inequality failure.
fn with_labels(e: MetricError, labels: &[String]) -> CliError {
    let names = |ids: &[usize]| -> Option<Vec<&str>> {
        ids.iter()
            .map(|&i| labels.get(i).map(String::as_str))
            .collect()
    };
    let ids: Vec<usize> = match e {
        MetricError::TriangleViolation(i, j, k) => vec![i, j, k],
        MetricError::NotSymmetric(i, j)
        | MetricError::NegativeDistance(i, j)
        | MetricError::ZeroOffDiagonal(i, j)
        | MetricError::NonFinite(i, j) => vec![i, j],
        MetricError::NonzeroDiagonal(i) => vec![i],
        _ => vec![],
    };
    let err = CliError::from(e);
    match names(&ids) {
        Some(points) if !ids.is_empty() => {
            err.with_details(serde_json::json!({ "points": points }))
        }
        _ => err,
    }
}
