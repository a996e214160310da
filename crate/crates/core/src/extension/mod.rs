//! One-point and multi-point Lipschitz extensions.
//!
//! Every routine takes a function `f0` on part of a space and returns an
//! [`ExtensionReport`] describing the values chosen off the domain and the
//! Lipschitz number before and after. The reported numbers always come from
//! a full pair scan of the extended function, never from the closed form
//! that motivated the choice.

mod average;
mod closed_form;
mod helly;
mod one_center;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::geometry::{GeometryError, PlanePoint};
use crate::lipschitz::{extend_with_indexed, lipschitz_number, LipschitzError, MetricFunction};
use crate::metric_space::MetricError;

pub use average::{average_extension, check_average_hypothesis};
pub use closed_form::{
    apex_distance, equality_criterion, polygon_extension, polygon_preserves, tetragon_extension,
    triangle_extension, PolygonExtension,
};
pub use helly::{
    chained_feasible, chained_regions, discs_intersection, helly_feasible, Feasibility,
};
pub use one_center::{one_center, optimal_one_point_extension, OneCenterSolution};

/// Relative gap below which two Lipschitz numbers are reported as equal.
pub const RATIO_EQ_RTOL: f64 = 1e-9;

/// Slack on angle conditions.
pub const ANGLE_ATOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtensionError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("`{0}` is already in the domain")]
    AlreadyDefined(String),
    #[error("no points given")]
    EmptyInput,
    #[error("{points} points but {weights} weights")]
    LengthMismatch { points: usize, weights: usize },
    #[error("weight {0} is not positive")]
    NonpositiveWeight(f64),
    #[error("range is not a nondegenerate triangle")]
    NotATriangle,
    #[error("range is not a convex tetragon")]
    NotATetragon,
    #[error("range is not a regular polygon: {0}")]
    NotRegularPolygon(String),
    #[error("metric is not of discrete-apex shape: {0}")]
    WrongMetricShape(String),
    #[error("closed-form rules need alpha = 1, got {0}")]
    AlphaNotOne(f64),
    #[error("apex distance {0} is below 1/2")]
    ApexTooClose(f64),
    #[error("no opposite pair has both angles >= {threshold}; angles {angles:?}")]
    AngleConditionFails { threshold: f64, angles: Vec<f64> },
    #[error("no target points")]
    EmptyTargets,
    #[error("target `{0}` overlaps the domain")]
    OverlappingDomain(String),
    #[error("bad chain ordering: {0}")]
    BadOrdering(String),
    #[error("budget must be finite and nonnegative, got {0}")]
    BadBudget(f64),
    #[error(transparent)]
    Lipschitz(#[from] LipschitzError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Which construction produced an extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    TriangleClosedForm,
    TetragonDiagonal,
    PolygonCenter,
    Average,
    OneCenterOptimal,
    HellyFeasible,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::TriangleClosedForm => "TriangleClosedForm",
            Rule::TetragonDiagonal => "TetragonDiagonal",
            Rule::PolygonCenter => "PolygonCenter",
            Rule::Average => "Average",
            Rule::OneCenterOptimal => "OneCenterOptimal",
            Rule::HellyFeasible => "HellyFeasible",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionReport {
    pub extended: MetricFunction,
    pub new_p_alpha: f64,
    pub base_p_alpha: f64,
    /// `new / base`, snapped to exactly 1 within [`RATIO_EQ_RTOL`]; absent
    /// when the base Lipschitz number is zero.
    pub ratio: Option<f64>,
    pub rule: Rule,
    pub chosen_points: BTreeMap<String, PlanePoint>,
    /// Whether the rule's sufficient condition held, for rules that run
    /// regardless of it.
    pub hypothesis: Option<bool>,
}

impl ExtensionReport {
    /// `new / base` without snapping.
    pub fn raw_ratio(&self) -> Option<f64> {
        (self.base_p_alpha > 0.0).then(|| self.new_p_alpha / self.base_p_alpha)
    }

    /// Whether the extension kept the Lipschitz number.
    pub fn preserves_lipschitz_number(&self) -> bool {
        match self.ratio {
            Some(r) => r == 1.0,
            None => self.new_p_alpha == 0.0,
        }
    }
}

pub(crate) fn snap_ratio(new: f64, base: f64) -> Option<f64> {
    if base <= 0.0 {
        return None;
    }
    if (new - base).abs() <= RATIO_EQ_RTOL * (1.0 + base) {
        Some(1.0)
    } else {
        Some(new / base)
    }
}

/// Extends `f0` by the given index-keyed values and measures the result.
pub(crate) fn build_report(
    f0: &MetricFunction,
    chosen: Vec<(usize, PlanePoint)>,
    rule: Rule,
) -> Result<ExtensionReport, ExtensionError> {
    let extended = extend_with_indexed(f0, chosen.iter().copied())?;
    let base_p_alpha = lipschitz_number(f0).p_alpha;
    let new_p_alpha = lipschitz_number(&extended).p_alpha;
    let space = f0.space();
    Ok(ExtensionReport {
        ratio: snap_ratio(new_p_alpha, base_p_alpha),
        extended,
        new_p_alpha,
        base_p_alpha,
        rule,
        chosen_points: chosen
            .into_iter()
            .map(|(i, v)| (space.label(i).to_owned(), v))
            .collect(),
        hypothesis: None,
    })
}

/// Resolves `e` to an index outside the domain of `f0`.
pub(crate) fn outside_point(f0: &MetricFunction, e: &str) -> Result<usize, ExtensionError> {
    let i = f0
        .space()
        .index_of(e)
        .ok_or_else(|| ExtensionError::UnknownLabel(e.to_owned()))?;
    if f0.contains(i) {
        return Err(ExtensionError::AlreadyDefined(e.to_owned()));
    }
    Ok(i)
}
