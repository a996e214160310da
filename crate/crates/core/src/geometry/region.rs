use super::{dot, GeometryError, PlanePoint, MEMBERSHIP_ATOL};

/// A closed planar region used in feasibility tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// `|z - center| <= radius`.
    Disc { center: PlanePoint, radius: f64 },
    /// `<normal, z> <= offset`.
    HalfPlane { normal: PlanePoint, offset: f64 },
    /// Sublevel set `|z - p1| <= k |z - p2|`, stored parametrically.
    Apollonius {
        p1: PlanePoint,
        p2: PlanePoint,
        k: f64,
    },
}

impl Region {
    /// Points sampled on the boundary. Half-plane boundaries are sampled on
    /// a segment of half-length `extent` around the point closest to the
    /// origin.
    pub fn boundary_samples(&self, count: usize, extent: f64) -> Vec<PlanePoint> {
        match *self {
            Region::Disc { center, radius } => (0..count)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / count as f64;
                    center + PlanePoint::from_polar(radius, t)
                })
                .collect(),
            Region::HalfPlane { normal, offset } => {
                let unit = normal / normal.norm();
                let foot = unit * (offset / normal.norm());
                let dir = PlanePoint::new(-unit.im, unit.re);
                let denom = (count.max(2) - 1) as f64;
                (0..count)
                    .map(|i| foot + dir * (extent * (2.0 * i as f64 / denom - 1.0)))
                    .collect()
            }
            Region::Apollonius { p1, p2, k } => apollonius_locus(p1, p2, k)
                .map(|r| r.boundary_samples(count, extent))
                .unwrap_or_default(),
        }
    }

    /// The boundary as a generalized circle `a|z|^2 + 2<b, z> + c = 0`,
    /// oriented so that the region is where the form is `<= 0`.
    pub fn boundary(&self) -> GeneralizedCircle {
        match *self {
            Region::Disc { center, radius } => GeneralizedCircle {
                a: 1.0,
                b: -center,
                c: center.norm_sqr() - radius * radius,
            },
            Region::HalfPlane { normal, offset } => GeneralizedCircle {
                a: 0.0,
                b: normal / 2.0,
                c: -offset,
            },
            Region::Apollonius { p1, p2, k } => {
                GeneralizedCircle::equal_weighted_distance(p1, 1.0, p2, k)
            }
        }
    }
}

/// The locus `{ z : |z - p1| / |z - p2| = k }`: the perpendicular bisector
/// (as the half-plane on the `p1` side) when `k = 1`, otherwise the circle
/// with center `(k^2 p2 - p1)/(k^2 - 1)` and radius `k|p1 - p2|/|k^2 - 1|`.
pub fn apollonius_locus(p1: PlanePoint, p2: PlanePoint, k: f64) -> Result<Region, GeometryError> {
    if !(k.is_finite() && k > 0.0) {
        return Err(GeometryError::NonpositiveRatio(k));
    }
    if p1 == p2 {
        return Err(GeometryError::CoincidentPoints);
    }
    if k == 1.0 {
        let normal = p2 - p1;
        return Ok(Region::HalfPlane {
            normal,
            offset: (p2.norm_sqr() - p1.norm_sqr()) / 2.0,
        });
    }
    let k2 = k * k;
    Ok(Region::Disc {
        center: (p2 * k2 - p1) / (k2 - 1.0),
        radius: k * (p1 - p2).norm() / (k2 - 1.0).abs(),
    })
}

/// Closed membership (inside or on the boundary).
pub fn region_membership(region: &Region, z: PlanePoint) -> bool {
    match *region {
        Region::Disc { center, radius } => (z - center).norm() <= radius + MEMBERSHIP_ATOL,
        Region::HalfPlane { normal, offset } => {
            dot(normal, z) - offset <= MEMBERSHIP_ATOL * normal.norm()
        }
        Region::Apollonius { p1, p2, k } => {
            (z - p1).norm() <= k * (z - p2).norm() + MEMBERSHIP_ATOL
        }
    }
}

/// `a|z|^2 + 2<b, z> + c`; a circle when `a != 0`, a line when `a = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedCircle {
    pub a: f64,
    pub b: PlanePoint,
    pub c: f64,
}

impl GeneralizedCircle {
    /// `wi^2 |z - qi|^2 - wj^2 |z - qj|^2`, zero where the two weighted
    /// distances agree.
    pub fn equal_weighted_distance(qi: PlanePoint, wi: f64, qj: PlanePoint, wj: f64) -> Self {
        let (wi2, wj2) = (wi * wi, wj * wj);
        Self {
            a: wi2 - wj2,
            b: -(qi * wi2 - qj * wj2),
            c: wi2 * qi.norm_sqr() - wj2 * qj.norm_sqr(),
        }
    }

    pub fn eval(&self, z: PlanePoint) -> f64 {
        self.a * z.norm_sqr() + 2.0 * dot(self.b, z) + self.c
    }

    /// Intersection points of two boundaries (at most two; none when the
    /// curves coincide, are parallel or concentric).
    pub fn intersect(&self, other: &Self) -> Vec<PlanePoint> {
        if self.a == 0.0 && other.a == 0.0 {
            return intersect_lines(self, other).into_iter().collect();
        }
        let (p, o) = if self.a.abs() >= other.a.abs() {
            (self, other)
        } else {
            (other, self)
        };
        // Radical line: p.a * o - o.a * p has no quadratic term.
        let n = o.b * p.a - p.b * o.a;
        let h = p.a * o.c - o.a * p.c;
        let nn = n.norm();
        if nn == 0.0 || !nn.is_finite() {
            return Vec::new();
        }
        let scale = p.b.norm().max(p.a.abs()).max(o.b.norm()).max(o.a.abs());
        if nn <= 1e-14 * scale * scale {
            return Vec::new();
        }
        let center = -p.b / p.a;
        let r2 = center.norm_sqr() - p.c / p.a;
        if r2 < 0.0 {
            return Vec::new();
        }
        // Line: 2<n, z> + h = 0.
        let unit = n / nn;
        let s = (dot(n, center) + h / 2.0) / nn;
        let foot = center - unit * s;
        let slack = r2 - s * s;
        let tol = 1e-10 * r2.max(1e-300);
        if slack < -tol {
            return Vec::new();
        }
        if slack <= tol {
            return vec![foot];
        }
        let half = slack.sqrt();
        let dir = PlanePoint::new(-unit.im, unit.re);
        vec![foot + dir * half, foot - dir * half]
    }
}

fn intersect_lines(l1: &GeneralizedCircle, l2: &GeneralizedCircle) -> Option<PlanePoint> {
    // 2 b1 . z = -c1, 2 b2 . z = -c2
    let det = l1.b.re * l2.b.im - l1.b.im * l2.b.re;
    let scale = l1.b.norm() * l2.b.norm();
    if det.abs() <= 1e-14 * scale || scale == 0.0 {
        return None;
    }
    let (r1, r2) = (-l1.c / 2.0, -l2.c / 2.0);
    Some(PlanePoint::new(
        (r1 * l2.b.im - l1.b.im * r2) / det,
        (l1.b.re * r2 - r1 * l2.b.re) / det,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> PlanePoint {
        PlanePoint::new(re, im)
    }

    #[test]
    fn unit_ratio_is_the_bisector() {
        let r = apollonius_locus(c(0.0, 0.0), c(1.0, 0.0), 1.0).unwrap();
        for z in r.boundary_samples(16, 5.0) {
            assert_abs_diff_eq!(z.re, 0.5, epsilon = 1e-12);
        }
        assert!(region_membership(&r, c(0.0, 3.0)));
        assert!(!region_membership(&r, c(0.9, 0.0)));
    }

    #[test]
    fn ratio_two_circle() {
        // |z|^2 = 4|z-1|^2 expands to |z - 4/3|^2 = 4/9.
        let r = apollonius_locus(c(0.0, 0.0), c(1.0, 0.0), 2.0).unwrap();
        let Region::Disc { center, radius } = r else {
            panic!("expected a circle")
        };
        assert_abs_diff_eq!(center.re, 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(center.im, 0.0);
        assert_abs_diff_eq!(radius, 2.0 / 3.0, epsilon = 1e-15);
        for z in [c(2.0 / 3.0, 0.0), c(2.0, 0.0)] {
            assert_abs_diff_eq!(z.norm() / (z - 1.0).norm(), 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!((z - center).norm(), radius, epsilon = 1e-12);
        }
    }

    #[test]
    fn locus_errors() {
        let p = c(1.0, 1.0);
        assert_eq!(
            apollonius_locus(p, p, 2.0),
            Err(GeometryError::CoincidentPoints)
        );
        assert_eq!(
            apollonius_locus(p, c(0.0, 0.0), 0.0),
            Err(GeometryError::NonpositiveRatio(0.0))
        );
        assert!(apollonius_locus(p, c(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn membership_examples() {
        let disc = Region::Disc {
            center: c(0.0, 0.0),
            radius: 1.0,
        };
        assert!(region_membership(&disc, c(1.0, 0.0)));
        assert!(!region_membership(&disc, c(1.0, 0.1)));

        let ap = Region::Apollonius {
            p1: c(0.0, 0.0),
            p2: c(1.0, 0.0),
            k: 2.0,
        };
        assert!(!region_membership(&ap, c(1.0, 0.0)));
        assert!(region_membership(&ap, c(2.0, 0.0)));

        let point = Region::Disc {
            center: c(0.0, 0.0),
            radius: 0.0,
        };
        assert!(region_membership(&point, c(0.0, 0.0)));
    }

    #[test]
    fn boundary_form_agrees_with_membership() {
        let regions = [
            Region::Disc {
                center: c(0.3, -1.0),
                radius: 2.0,
            },
            Region::HalfPlane {
                normal: c(1.0, 2.0),
                offset: 0.5,
            },
            Region::Apollonius {
                p1: c(0.0, 0.0),
                p2: c(1.0, 1.0),
                k: 0.5,
            },
        ];
        for r in regions {
            let g = r.boundary();
            for z in [c(0.0, 0.0), c(3.0, 3.0), c(-2.0, 1.0), c(0.5, 0.5)] {
                assert_eq!(g.eval(z) <= 0.0, region_membership(&r, z), "{r:?} at {z}");
            }
        }
    }

    #[test]
    fn circle_circle_and_line_intersections() {
        let unit = Region::Disc {
            center: c(0.0, 0.0),
            radius: 1.0,
        }
        .boundary();
        let shifted = Region::Disc {
            center: c(1.0, 0.0),
            radius: 1.0,
        }
        .boundary();
        let mut pts = unit.intersect(&shifted);
        pts.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert_eq!(pts.len(), 2);
        assert_abs_diff_eq!(pts[0].re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(pts[1].im, 3f64.sqrt() / 2.0, epsilon = 1e-12);

        let vertical = Region::HalfPlane {
            normal: c(1.0, 0.0),
            offset: 1.0,
        }
        .boundary();
        let tangent = unit.intersect(&vertical);
        assert_eq!(tangent.len(), 1);
        assert_abs_diff_eq!(tangent[0].re, 1.0, epsilon = 1e-9);

        let horizontal = Region::HalfPlane {
            normal: c(0.0, 2.0),
            offset: 4.0,
        }
        .boundary();
        let p = vertical.intersect(&horizontal);
        assert_eq!(p.len(), 1);
        assert_abs_diff_eq!(p[0].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[0].im, 2.0, epsilon = 1e-12);

        let far = Region::Disc {
            center: c(5.0, 0.0),
            radius: 1.0,
        }
        .boundary();
        assert!(unit.intersect(&far).is_empty());
    }
}
