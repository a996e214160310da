//! Lipschitz numbers and Lipschitz extensions of complex-valued functions on
//! finite metric spaces.
//!
//! A [`MetricFunction`] assigns points of the complex plane to some points of
//! a validated [`FiniteMetricSpace`]. Its Lipschitz number of order `alpha`
//! is
//!
//! ```text
//! p_alpha(f) = max over x != y of |f(x) - f(y)| / d(x, y)^alpha
//! ```
//!
//! and the crate answers the questions that come with it:
//!
//! | Question | Entry point |
//! |----------|-------------|
//! | What is `p_alpha(f)`? | [`lipschitz_number`] |
//! | Best value at one new point? | [`optimal_one_point_extension`] (exact weighted 1-center) |
//! | Closed-form value over a discrete apex? | [`triangle_extension`], [`tetragon_extension`], [`polygon_extension`] |
//! | Extend to many points at once? | [`average_extension`] |
//! | Does any value keep `p_alpha` within a budget? | [`helly_feasible`], [`chained_feasible`] |
//! | Separate two sets by a Hölder function? | [`separate`] |
//!
//! Every extension returns an [`ExtensionReport`] whose Lipschitz numbers
//! come from a full pair scan of the extended function, so the closed forms
//! are checked rather than trusted. The [`oracle`] module holds a
//! brute-force grid search used by the tests to certify the exact solver.
//!
//! ```
//! use std::sync::Arc;
//! use lipext::{discrete_apex, optimal_one_point_extension, MetricFunction, PlanePoint};
//!
//! let space = Arc::new(discrete_apex(3, 0.5).unwrap());
//! let f0 = MetricFunction::new(
//!     space,
//!     1.0,
//!     [
//!         ("x1", PlanePoint::new(0.0, 0.0)),
//!         ("x2", PlanePoint::new(1.0, 0.0)),
//!         ("x3", PlanePoint::new(0.5, 3f64.sqrt() / 2.0)),
//!     ],
//! )
//! .unwrap();
//! let report = optimal_one_point_extension(&f0, "e").unwrap();
//! assert!((report.ratio.unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-12);
//! ```

pub mod extension;
pub mod geometry;
pub mod lipschitz;
pub mod metric_space;
pub mod oracle;
pub mod separation;

pub use extension::{
    average_extension, chained_feasible, chained_regions, check_average_hypothesis,
    discs_intersection, equality_criterion, helly_feasible, one_center,
    optimal_one_point_extension, polygon_extension, tetragon_extension, triangle_extension,
    ExtensionError, ExtensionReport, Feasibility, OneCenterSolution, Rule,
};
pub use geometry::{PlanePoint, Region};
pub use lipschitz::{extend_with, is_n_polygon, lipschitz_number, LipschitzReport, MetricFunction};
pub use metric_space::{
    diameter, discrete_apex, set_distance, FiniteMetricSpace, MetricError, PointSubset,
};
pub use separation::{separate, urysohn_function, SeparationCertificate, SeparationError};
