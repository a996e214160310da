//! Argument parsing and one handler per subcommand.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use lipext::extension::{apex_distance, PolygonExtension};
use lipext::geometry::apollonius_locus;
use lipext::metric_space::pow_alpha;
use lipext::oracle::{grid_extension_check, grid_minimax, GridSpec};
use lipext::separation::truncated_counterexample;
use lipext::{
    average_extension, chained_feasible, chained_regions, extend_with, helly_feasible,
    lipschitz_number, optimal_one_point_extension, polygon_extension, separate, tetragon_extension,
    triangle_extension, ExtensionReport, Feasibility, MetricFunction, PlanePoint, Region,
};
use serde::Serialize;

use crate::error::CliError;
use crate::problem::{pair, MetricSpec, Problem, ProblemFile, Sets};
use crate::report::{
    ApolloniusReport, CandidateCheck, ExtendReport, FeasibleReport, LipnumReport, OracleReport,
    PlotRow, PolygonInfo, RegionShape, SeparateReport,
};

/// Boundary samples per curve in `--plot` output.
const PLOT_SAMPLES: usize = 128;

#[derive(Debug, Parser)]
#[command(
    name = "lipext",
    version,
    about = "Lipschitz numbers and Lipschitz extensions on finite metric spaces"
)]
pub struct Cli {
    /// Override the file's Hölder exponent.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Slack for the `preserves` and `agree` verdicts.
    #[arg(
        long,
        global = true,
        default_value_t = 1e-9,
        allow_hyphen_values = true
    )]
    pub tolerance: f64,
    /// Also write sampled data as CSV (columns x, y, value).
    #[arg(long, global = true, value_name = "PATH")]
    pub plot: Option<PathBuf>,
    /// Emit JSON (the only, and default, output format).
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lipschitz number, sup norm and alpha-norm of `f0`.
    Lipnum { file: PathBuf },
    /// Extend `f0` to the `extend_at` point(s).
    Extend {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::OneCenter)]
        method: Method,
        /// Budget for `--method helly` (default: the Lipschitz number of `f0`).
        #[arg(long, allow_hyphen_values = true)]
        budget: Option<f64>,
        /// With `--method helly`, also keep the sup norm.
        #[arg(long)]
        sup_norm: bool,
    },
    /// Separate `sets.A` from `sets.B` by a Hölder function.
    Separate { file: PathBuf },
    /// Whether some value at the `extend_at` point keeps the ratios within a budget.
    Feasible {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Helly)]
        mode: Mode,
        #[arg(long, allow_hyphen_values = true)]
        budget: Option<f64>,
        /// Chain order for `--mode chained`, comma separated (default: by distance to the target).
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
        /// With `--mode helly`, also keep the sup norm.
        #[arg(long)]
        norm: bool,
    },
    /// The locus |z - p1| = k |z - p2|. Points are `re,im` or complex literals like `1+2i`.
    Apollonius {
        #[arg(allow_hyphen_values = true, value_parser = parse_point)]
        p1: PlanePoint,
        #[arg(allow_hyphen_values = true, value_parser = parse_point)]
        p2: PlanePoint,
        #[arg(allow_hyphen_values = true)]
        k: f64,
    },
    /// Compare the exact one-point extension with a brute-force grid search.
    OracleCheck {
        file: PathBuf,
        /// Grid samples per side and round.
        #[arg(long, default_value_t = GridSpec::DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, default_value_t = GridSpec::DEFAULT_ROUNDS)]
        rounds: usize,
    },
    /// Print a problem file for the integers against the points k + 1/k, k <= N.
    GenCounterexample {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Triangle, tetragon or regular-polygon rule, chosen by the range.
    ClosedForm,
    OneCenter,
    Average,
    Helly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Helly,
    Chained,
}

fn parse_point(s: &str) -> Result<PlanePoint, String> {
    if let Some((re, im)) = s.split_once(',') {
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
        return Ok(PlanePoint::new(parse(re)?, parse(im)?));
    }
    s.parse::<PlanePoint>().map_err(|e| format!("`{s}`: {e}"))
}

/// What a command produced: the JSON document and, where meaningful, plot
/// rows.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: String,
    pub plot: Option<Vec<PlotRow>>,
}

fn outcome<T: Serialize>(report: &T, plot: Option<Vec<PlotRow>>) -> Outcome {
    Outcome {
        json: serde_json::to_string_pretty(report).expect("reports serialize"),
        plot,
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
        return Err(CliError::schema(
            "BadTolerance",
            format!("tolerance must be nonnegative, got {}", cli.tolerance),
        ));
    }
    let load = |file: &PathBuf| Problem::load(file, cli.alpha);
    match &cli.command {
        Command::Lipnum { file } => lipnum(&load(file)?),
        Command::Extend {
            file,
            method,
            budget,
            sup_norm,
        } => extend(&load(file)?, *method, *budget, *sup_norm, cli.tolerance),
        Command::Separate { file } => separate_sets(&load(file)?),
        Command::Feasible {
            file,
            mode,
            budget,
            order,
            norm,
        } => feasible(&load(file)?, *mode, *budget, order, *norm),
        Command::Apollonius { p1, p2, k } => apollonius(*p1, *p2, *k),
        Command::OracleCheck {
            file,
            resolution,
            rounds,
        } => oracle_check(&load(file)?, *resolution, *rounds, cli.tolerance),
        Command::GenCounterexample { n } => {
            gen_counterexample(*n as usize, cli.alpha.unwrap_or(1.0))
        }
    }
}

/// Each value of `f` with its local Lipschitz constant
/// `max_y |f(x) - f(y)| / d(x, y)^alpha`.
fn local_rows(f: &MetricFunction) -> Vec<PlotRow> {
    let space = f.space();
    f.values()
        .iter()
        .map(|(&i, &v)| {
            let value = f
                .values()
                .iter()
                .filter(|(&j, _)| j != i)
                .map(|(&j, &w)| (v - w).norm() / pow_alpha(space.d(i, j), f.alpha()))
                .fold(0.0, f64::max);
            PlotRow {
                x: v.re,
                y: v.im,
                value,
            }
        })
        .collect()
}

fn circle_rows(region: &Region, extent: f64, value: impl Fn(PlanePoint) -> f64) -> Vec<PlotRow> {
    region
        .boundary_samples(PLOT_SAMPLES, extent)
        .into_iter()
        .map(|z| PlotRow {
            x: z.re,
            y: z.im,
            value: value(z),
        })
        .collect()
}

fn labeled_values(f: &MetricFunction) -> std::collections::BTreeMap<String, [f64; 2]> {
    let space = f.space();
    f.values()
        .iter()
        .map(|(&i, &v)| (space.label(i).to_owned(), pair(v)))
        .collect()
}

fn lipnum(problem: &Problem) -> Result<Outcome, CliError> {
    let f = problem.function()?;
    let r = lipschitz_number(&f);
    let report = LipnumReport {
        alpha: f.alpha(),
        p_alpha: r.p_alpha,
        sup_norm: r.sup_norm,
        alpha_norm: r.alpha_norm,
        witness: r.witness.map(|(a, b)| [a, b]),
    };
    Ok(outcome(&report, Some(local_rows(&f))))
}

fn extend_report(r: &ExtensionReport, tolerance: f64) -> ExtendReport {
    ExtendReport {
        rule: r.rule.to_string(),
        alpha: r.extended.alpha(),
        base_p_alpha: r.base_p_alpha,
        new_p_alpha: r.new_p_alpha,
        ratio: r.ratio,
        preserves: r.new_p_alpha <= r.base_p_alpha * (1.0 + tolerance),
        hypothesis: r.hypothesis,
        chosen_points: r
            .chosen_points
            .iter()
            .map(|(k, &v)| (k.clone(), pair(v)))
            .collect(),
        values: labeled_values(&r.extended),
        budget: None,
        polygon: None,
    }
}

/// The closed-form rule matching the number of distinct values of `f0`.
fn closed_form(
    f0: &MetricFunction,
    e: &str,
) -> Result<(ExtensionReport, Option<PolygonInfo>), CliError> {
    match f0.range().len() {
        3 => Ok((triangle_extension(f0, e)?, None)),
        4 => Ok((tetragon_extension(f0, e)?, None)),
        n if n >= 5 => {
            let PolygonExtension {
                report,
                n,
                side,
                circumradius,
                diameter,
            } = polygon_extension(f0, e)?;
            let l = apex_distance(f0, e)?;
            let info = PolygonInfo {
                n,
                side,
                circumradius,
                diameter,
                predicted_p_alpha: diameter.max(circumradius / l),
            };
            Ok((report, Some(info)))
        }
        n => Err(CliError::precondition(
            "NoClosedForm",
            format!("closed forms need a triangle, tetragon or regular polygon; the range has {n} values"),
        )),
    }
}

fn extend(
    problem: &Problem,
    method: Method,
    budget: Option<f64>,
    sup_norm: bool,
    tolerance: f64,
) -> Result<Outcome, CliError> {
    let f0 = problem.function()?;
    let (report, polygon) = match method {
        Method::ClosedForm => closed_form(&f0, problem.single_target()?)?,
        Method::OneCenter => (
            optimal_one_point_extension(&f0, problem.single_target()?)?,
            None,
        ),
        Method::Average => (average_extension(&f0, &problem.targets()?)?, None),
        Method::Helly => {
            return helly_extend(&f0, problem.single_target()?, budget, sup_norm, tolerance)
        }
    };
    let rows = local_rows(&report.extended);
    let mut out = extend_report(&report, tolerance);
    out.polygon = polygon;
    Ok(outcome(&out, Some(rows)))
}

fn helly_extend(
    f0: &MetricFunction,
    e: &str,
    budget: Option<f64>,
    sup_norm: bool,
    tolerance: f64,
) -> Result<Outcome, CliError> {
    let base = lipschitz_number(f0).p_alpha;
    let budget = budget.unwrap_or(base);
    match helly_feasible(f0, e, Some(budget), sup_norm)? {
        Feasibility::Feasible(z) => {
            let extended = extend_with(f0, [(e, z)])?;
            let new = lipschitz_number(&extended).p_alpha;
            let report = ExtendReport {
                rule: lipext::Rule::HellyFeasible.to_string(),
                alpha: f0.alpha(),
                base_p_alpha: base,
                new_p_alpha: new,
                ratio: (base > 0.0).then(|| new / base),
                preserves: new <= base * (1.0 + tolerance),
                hypothesis: None,
                chosen_points: [(e.to_owned(), pair(z))].into(),
                values: labeled_values(&extended),
                budget: Some(budget),
                polygon: None,
            };
            Ok(outcome(&report, Some(local_rows(&extended))))
        }
        Feasibility::Infeasible { required_budget } => Err(CliError::precondition(
            "Infeasible",
            format!("no value at `{e}` fits budget {budget}; the least feasible budget is {required_budget}"),
        )
        .with_details(serde_json::json!({ "budget": budget, "required_budget": required_budget }))),
    }
}

fn separate_sets(problem: &Problem) -> Result<Outcome, CliError> {
    let Sets { a, b } = problem.sets()?;
    let space = &problem.space;
    let sa = space.subset(a)?;
    let sb = space.subset(b)?;
    let cert = separate(space.clone(), &sa, &sb, problem.alpha)?;
    let mut rows = Vec::new();
    if let Some(f) = &cert.function {
        for (&i, v) in f.values() {
            rows.push(PlotRow {
                x: space.point_to_set(i, &sa)?,
                y: space.point_to_set(i, &sb)?,
                value: v.re,
            });
        }
    }
    let report = SeparateReport {
        alpha: cert.alpha,
        separable: cert.separable,
        gap: cert.gap,
        bound: cert.lipschitz_bound,
        values: cert.function.as_ref().map(|f| {
            f.values()
                .iter()
                .map(|(&i, v)| (space.label(i).to_owned(), v.re))
                .collect()
        }),
        p_alpha: cert.function.as_ref().map(|f| lipschitz_number(f).p_alpha),
        note: cert.note,
    };
    Ok(outcome(&report, Some(rows)))
}

fn region_shape(r: &Region) -> RegionShape {
    match *r {
        Region::Disc { center, radius } => RegionShape::Disc {
            center: pair(center),
            radius,
        },
        Region::HalfPlane { normal, offset } => RegionShape::HalfPlane {
            normal: pair(normal),
            offset,
        },
        Region::Apollonius { p1, p2, k } => RegionShape::Apollonius {
            p1: pair(p1),
            p2: pair(p2),
            k,
        },
    }
}

fn feasible(
    problem: &Problem,
    mode: Mode,
    budget: Option<f64>,
    order: &[String],
    norm: bool,
) -> Result<Outcome, CliError> {
    let f0 = problem.function()?;
    let e = problem.single_target()?;
    let space = f0.space();
    let ei = space.require(e)?;
    let r = lipschitz_number(&f0);
    let budget = budget.unwrap_or(r.p_alpha);
    let extent = 2.0
        * (1.0
            + f0.values().values().map(|v| v.norm()).fold(0.0, f64::max)
            + budget
                * f0.domain()
                    .map(|i| pow_alpha(space.d(ei, i), f0.alpha()))
                    .fold(0.0, f64::max));
    match mode {
        Mode::Helly => {
            let feas = helly_feasible(&f0, e, Some(budget), norm)?;
            let mut rows = Vec::new();
            for (k, (&i, &v)) in f0.values().iter().enumerate() {
                let disc = Region::Disc {
                    center: v,
                    radius: budget * pow_alpha(space.d(ei, i), f0.alpha()),
                };
                rows.extend(circle_rows(&disc, extent, |_| k as f64));
            }
            if norm {
                let disc = Region::Disc {
                    center: PlanePoint::new(0.0, 0.0),
                    radius: r.sup_norm,
                };
                rows.extend(circle_rows(&disc, extent, |_| f0.values().len() as f64));
            }
            let report = FeasibleReport {
                mode: "helly".into(),
                budget,
                feasible: feas.is_feasible(),
                point: feas.point().map(pair),
                required_budget: match feas {
                    Feasibility::Infeasible { required_budget } => Some(required_budget),
                    Feasibility::Feasible(_) => None,
                },
                order: None,
                regions: None,
            };
            Ok(outcome(&report, Some(rows)))
        }
        Mode::Chained => {
            let order: Vec<String> = if order.is_empty() {
                let mut domain: Vec<usize> = f0.domain().collect();
                domain.sort_by(|&i, &j| space.d(ei, i).total_cmp(&space.d(ei, j)).then(i.cmp(&j)));
                domain
                    .into_iter()
                    .map(|i| space.label(i).to_owned())
                    .collect()
            } else {
                order.to_vec()
            };
            let order_refs: Vec<&str> = order.iter().map(String::as_str).collect();
            let regions = chained_regions(&f0, &order_refs, e, Some(budget))?;
            let point = chained_feasible(&f0, &order_refs, e, Some(budget))?;
            let rows = regions
                .iter()
                .enumerate()
                .flat_map(|(k, region)| circle_rows(region, extent, move |_| k as f64))
                .collect();
            let report = FeasibleReport {
                mode: "chained".into(),
                budget,
                feasible: point.is_some(),
                point: point.map(pair),
                required_budget: None,
                order: Some(order),
                regions: Some(regions.iter().map(region_shape).collect()),
            };
            Ok(outcome(&report, Some(rows)))
        }
    }
}

fn apollonius(p1: PlanePoint, p2: PlanePoint, k: f64) -> Result<Outcome, CliError> {
    let region = apollonius_locus(p1, p2, k)?;
    let report = match region {
        Region::Disc { center, radius } => ApolloniusReport::Circle {
            center: pair(center),
            radius,
        },
        Region::HalfPlane { normal, offset } => {
            let unit = normal / normal.norm();
            let mut direction = unit * PlanePoint::i();
            if direction.re < 0.0 || (direction.re == 0.0 && direction.im < 0.0) {
                direction = -direction;
            }
            ApolloniusReport::Line {
                point: pair(unit * (offset / normal.norm())),
                direction: pair(direction),
            }
        }
        Region::Apollonius { .. } => {
            unreachable!("apollonius_locus returns a disc or a half-plane")
        }
    };
    let extent = 2.0 * (1.0 + (p1 - p2).norm());
    let rows = circle_rows(&region, extent, |z| (z - p1).norm() / (z - p2).norm());
    Ok(outcome(&report, Some(rows)))
}

fn oracle_check(
    problem: &Problem,
    resolution: usize,
    rounds: usize,
    tolerance: f64,
) -> Result<Outcome, CliError> {
    let f0 = problem.function()?;
    let e = problem.single_target()?;
    let space = f0.space();
    let ei = space.require(e)?;
    let exact = optimal_one_point_extension(&f0, e)?;
    let (points, weights): (Vec<_>, Vec<_>) = f0
        .values()
        .iter()
        .map(|(&i, &v)| (v, 1.0 / pow_alpha(space.d(ei, i), f0.alpha())))
        .unzip();
    let spec = GridSpec {
        resolution,
        rounds,
        ..GridSpec::around(&points)
    };
    let grid = grid_minimax(&points, &weights, &spec)?;
    let grid_p = exact.base_p_alpha.max(grid.value);

    let mut candidates = Vec::new();
    let mut check = |report: &ExtensionReport| -> Result<(), CliError> {
        let z = report.chosen_points[e];
        candidates.push(CandidateCheck {
            rule: report.rule.to_string(),
            point: pair(z),
            p_alpha: report.new_p_alpha,
            optimal: grid_extension_check(&f0, e, z, Some(spec))?,
        });
        Ok(())
    };
    check(&exact)?;
    // Closed forms are compared too when they apply; when they do not, the
    // exact solver is the only candidate.
    if let Ok((report, _)) = closed_form(&f0, e) {
        check(&report)?;
    }

    let report = OracleReport {
        target: e.to_owned(),
        exact_point: pair(exact.chosen_points[e]),
        exact_p_alpha: exact.new_p_alpha,
        grid_point: pair(grid.z),
        grid_p_alpha: grid_p,
        error_bound: grid.error_bound,
        tolerance,
        agree: (grid_p - exact.new_p_alpha).abs() <= grid.error_bound + tolerance,
        candidates,
    };
    Ok(outcome(&report, None))
}

fn gen_counterexample(n: usize, alpha: f64) -> Result<Outcome, CliError> {
    let (space, a, b) = truncated_counterexample(n)?;
    let file = ProblemFile {
        alpha,
        points: space.labels().to_vec(),
        metric: MetricSpec::Matrix {
            d: space.matrix().to_vec(),
        },
        f0: Default::default(),
        extend_at: None,
        sets: Some(Sets { a, b }),
    };
    // Validate the alpha the same way a loaded file would be.
    Problem::from_file(file.clone(), None)?;
    Ok(outcome(&file, None))
}
