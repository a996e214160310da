//! The JSON documents the commands print. Each one deserializes back into
//! its own type.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::problem::Pair;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipnumReport {
    pub alpha: f64,
    pub p_alpha: f64,
    pub sup_norm: f64,
    pub alpha_norm: f64,
    /// A pair of labels attaining `p_alpha`.
    pub witness: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendReport {
    pub rule: String,
    pub alpha: f64,
    pub base_p_alpha: f64,
    pub new_p_alpha: f64,
    /// `new / base`, absent when `base` is zero.
    pub ratio: Option<f64>,
    /// Whether `new <= base` within the tolerance.
    pub preserves: bool,
    /// Whether the rule's sufficient condition held, for rules that report it.
    pub hypothesis: Option<bool>,
    pub chosen_points: BTreeMap<String, Pair>,
    /// The extended function.
    pub values: BTreeMap<String, Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<PolygonInfo>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonInfo {
    pub n: usize,
    pub side: f64,
    pub circumradius: f64,
    pub diameter: f64,
    /// `max(diameter, circumradius / l)`.
    pub predicted_p_alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparateReport {
    pub alpha: f64,
    pub separable: bool,
    /// `d(A, B)`.
    pub gap: f64,
    /// `1 / gap^alpha`, bounding the Lipschitz number of `values`.
    pub bound: Option<f64>,
    /// The separating function: 0 on `A`, 1 on `B`.
    pub values: Option<BTreeMap<String, f64>>,
    pub p_alpha: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibleReport {
    pub mode: String,
    pub budget: f64,
    pub feasible: bool,
    pub point: Option<Pair>,
    /// Least feasible budget (helly mode, when infeasible).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub required_budget: Option<f64>,
    /// The chain used (chained mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<RegionShape>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionShape {
    Disc { center: Pair, radius: f64 },
    HalfPlane { normal: Pair, offset: f64 },
    Apollonius { p1: Pair, p2: Pair, k: f64 },
}

/// The Apollonius locus `|z - p1| = k |z - p2|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ApolloniusReport {
    Circle {
        center: Pair,
        radius: f64,
    },
    /// Unit `direction`, `point` the foot of the perpendicular from 0.
    Line {
        point: Pair,
        direction: Pair,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub target: String,
    pub exact_point: Pair,
    pub exact_p_alpha: f64,
    pub grid_point: Pair,
    pub grid_p_alpha: f64,
    pub error_bound: f64,
    pub tolerance: f64,
    /// `|grid - exact| <= error_bound + tolerance`.
    pub agree: bool,
    pub candidates: Vec<CandidateCheck>,
}

/// A rule's value at the target, checked against the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateCheck {
    pub rule: String,
    pub point: Pair,
    pub p_alpha: f64,
    /// Within the grid's error bound of the best achievable value.
    pub optimal: bool,
}

/// One CSV row of `--plot` output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}
