//! Command errors, their exit codes, and the JSON written to standard error.

use std::fmt;

use lipext::geometry::GeometryError;
use lipext::lipschitz::LipschitzError;
use lipext::oracle::OracleError;
use lipext::{ExtensionError, MetricError, SeparationError};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Process exit codes. Every failure maps to exactly one of them.
pub mod exit {
    pub const OK: i32 = 0;
    /// Unreadable or schema-invalid input, bad flags or flag values.
    pub const SCHEMA: i32 = 2;
    /// The distance matrix is not a metric.
    pub const METRIC: i32 = 3;
    /// Labels, sets or targets inconsistent with the space or function.
    pub const DOMAIN: i32 = 4;
    /// The requested rule's hypotheses do not hold.
    pub const PRECONDITION: i32 = 5;
}

/// A failed command: exit code plus a machine-readable payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliError {
    pub code: i32,
    /// Error variant name, e.g. `TriangleViolation`.
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

/// The document written to standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub error: CliError,
}

impl CliError {
    pub fn new(code: i32, kind: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            code,
            kind: kind.into(),
            message: message.into(),
            details: None,
        }
    }

    pub fn schema(kind: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(exit::SCHEMA, kind, message)
    }

    pub fn domain(kind: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(exit::DOMAIN, kind, message)
    }

    pub fn precondition(kind: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(exit::PRECONDITION, kind, message)
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ErrorDocument {
            error: self.clone(),
        })
        .expect("error document serializes")
    }

    fn from_variant<E: fmt::Debug + fmt::Display>(code: i32, e: &E) -> Self {
        Self::new(code, variant_name(e), e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

/// `Foo` from the derived `Debug` output `Foo(..)` / `Foo { .. }`.
fn variant_name<E: fmt::Debug>(e: &E) -> String {
    let debug = format!("{e:?}");
    debug
        .split(['(', ' ', '{'])
        .next()
        .unwrap_or_default()
        .to_owned()
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        use MetricError::*;
        let code = match e {
            UnknownLabel(_) | EmptySet | IndexOutOfRange(_) | ForeignSubset => exit::DOMAIN,
            BadExponent(_) => exit::SCHEMA,
            NotSquare { .. }
            | LabelCount { .. }
            | DuplicateLabel(_)
            | NonFinite(..)
            | NotSymmetric(..)
            | NegativeDistance(..)
            | NonzeroDiagonal(_)
            | ZeroOffDiagonal(..)
            | TriangleViolation(..)
            | ApexTooClose(_)
            | TooFewPoints { .. } => exit::METRIC,
        };
        Self::from_variant(code, &e)
    }
}

impl From<LipschitzError> for CliError {
    fn from(e: LipschitzError) -> Self {
        use LipschitzError::*;
        match e {
            Metric(m) => m.into(),
            EmptyDomain | OverlappingDomain(_) => Self::from_variant(exit::DOMAIN, &e),
            BadExponent(_) | NonFiniteValue(_) => Self::from_variant(exit::SCHEMA, &e),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        use GeometryError::*;
        let code = match e {
            DegenerateTriangle => exit::PRECONDITION,
            CoincidentPoints | NonpositiveRatio(_) | BadCount(_) | BadSide(_) | NonFinite => {
                exit::SCHEMA
            }
        };
        Self::from_variant(code, &e)
    }
}

impl From<ExtensionError> for CliError {
    fn from(e: ExtensionError) -> Self {
        use ExtensionError::*;
        let code = match &e {
            Lipschitz(inner) => return inner.clone().into(),
            Metric(inner) => return inner.clone().into(),
            Geometry(inner) => return inner.clone().into(),
            UnknownLabel(_)
            | AlreadyDefined(_)
            | EmptyInput
            | LengthMismatch { .. }
            | NonpositiveWeight(_)
            | EmptyTargets
            | OverlappingDomain(_)
            | BadOrdering(_) => exit::DOMAIN,
            BadBudget(_) => exit::SCHEMA,
            NotATriangle
            | NotATetragon
            | NotRegularPolygon(_)
            | WrongMetricShape(_)
            | AlphaNotOne(_)
            | ApexTooClose(_)
            | AngleConditionFails { .. } => exit::PRECONDITION,
        };
        let err = Self::from_variant(code, &e);
        match e {
            AngleConditionFails { threshold, angles } => {
                err.with_details(serde_json::json!({ "threshold": threshold, "angles": angles }))
            }
            _ => err,
        }
    }
}

impl From<SeparationError> for CliError {
    fn from(e: SeparationError) -> Self {
        use SeparationError::*;
        match e {
            Lipschitz(inner) => inner.into(),
            Metric(inner) => inner.into(),
            EmptySet | SetsOverlap(_) | SetsTouch | ForeignSubset => {
                Self::from_variant(exit::DOMAIN, &e)
            }
            BadExponent(_) => Self::from_variant(exit::SCHEMA, &e),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        use OracleError::*;
        let code = match e {
            InvalidSpec(_) | BadInput => exit::SCHEMA,
            UnknownLabel(_) | AlreadyDefined(_) => exit::DOMAIN,
            BoxTooSmall(_) => exit::PRECONDITION,
        };
        Self::from_variant(code, &e)
    }
}
