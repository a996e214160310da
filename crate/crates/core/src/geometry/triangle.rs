use super::{cross, GeometryError, PlanePoint, DEGENERACY_RTOL};

/// Three points in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub vertices: [PlanePoint; 3],
}

impl Triangle {
    pub fn new(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> Self {
        Self {
            vertices: [a, b, c],
        }
    }

    /// Side lengths; entry `k` is the side opposite vertex `k`.
    pub fn sides(&self) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        [(b - c).norm(), (c - a).norm(), (a - b).norm()]
    }

    pub fn is_degenerate(&self) -> bool {
        let [a, b, c] = self.vertices;
        let longest = self.sides().into_iter().fold(0.0, f64::max);
        let twice_area = cross(b - a, c - a).abs();
        twice_area.is_nan() || twice_area < DEGENERACY_RTOL * longest * longest || longest == 0.0
    }
}

/// `z -> [conj] (e^{-i angle} (z - translation))`, the motion that carries a
/// triangle to its normal form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub angle: f64,
    pub translation: PlanePoint,
    pub reflect: bool,
}

impl RigidMotion {
    pub fn apply(&self, z: PlanePoint) -> PlanePoint {
        let w = (z - self.translation) * PlanePoint::from_polar(1.0, -self.angle);
        if self.reflect {
            w.conj()
        } else {
            w
        }
    }

    pub fn invert(&self, w: PlanePoint) -> PlanePoint {
        let w = if self.reflect { w.conj() } else { w };
        w * PlanePoint::from_polar(1.0, self.angle) + self.translation
    }
}

/// A triangle moved so that its largest side is `[0, r]` on the real axis
/// and the remaining vertex (the apex) lies in the upper half-plane on the
/// left of `re = r/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalTriangle {
    pub base: f64,
    pub apex: PlanePoint,
    pub motion: RigidMotion,
    /// Original vertex indices sent to `0`, `r` and the apex, in that order.
    pub permutation: [usize; 3],
}

impl NormalTriangle {
    pub fn vertices(&self) -> [PlanePoint; 3] {
        [
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(self.base, 0.0),
            self.apex,
        ]
    }

    /// Midpoint of the base.
    pub fn base_midpoint(&self) -> PlanePoint {
        PlanePoint::new(self.base / 2.0, 0.0)
    }
}

/// Brings a triangle to normal form by a rotation, a translation and
/// possibly a reflection.
pub fn normalize(t: &Triangle) -> Result<NormalTriangle, GeometryError> {
    if t.vertices
        .iter()
        .any(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(GeometryError::NonFinite);
    }
    if t.is_degenerate() {
        return Err(GeometryError::DegenerateTriangle);
    }
    let sides = t.sides();
    // Largest side; ties go to the lowest opposite-vertex index.
    let opposite = (0..3)
        .max_by(|&i, &j| sides[i].total_cmp(&sides[j]).then(j.cmp(&i)))
        .unwrap();
    let (p, q) = match opposite {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let r = sides[opposite];
    let mut motion = motion_onto_axis(t.vertices[p], t.vertices[q], t.vertices[opposite]);
    let mut permutation = [p, q, opposite];
    let mut apex = motion.apply(t.vertices[opposite]);
    if apex.re > r / 2.0 {
        motion = motion_onto_axis(t.vertices[q], t.vertices[p], t.vertices[opposite]);
        permutation = [q, p, opposite];
        apex = motion.apply(t.vertices[opposite]);
    }
    Ok(NormalTriangle {
        base: r,
        apex,
        motion,
        permutation,
    })
}

/// Motion sending `from` to 0, `to` onto the positive real axis and `third`
/// into the closed upper half-plane.
fn motion_onto_axis(from: PlanePoint, to: PlanePoint, third: PlanePoint) -> RigidMotion {
    let angle = (to - from).arg();
    let mut motion = RigidMotion {
        angle,
        translation: from,
        reflect: false,
    };
    if motion.apply(third).im < 0.0 {
        motion.reflect = true;
    }
    motion
}

/// Circumcenter `(r + i(x(x - r)/y + y)) / 2` of a normal triangle with apex
/// `x + iy`.
pub fn circumcenter(nt: &NormalTriangle) -> PlanePoint {
    let (x, y) = (nt.apex.re, nt.apex.im);
    let r = nt.base;
    PlanePoint::new(r / 2.0, (x * (x - r) / y + y) / 2.0)
}

/// `r / (2 sin theta)` with `theta` the apex angle.
pub fn circumradius(nt: &NormalTriangle) -> f64 {
    nt.base / (2.0 * largest_angle(nt).sin())
}

/// Angle at the apex, opposite the base, by the law of cosines.
pub fn largest_angle(nt: &NormalTriangle) -> f64 {
    let r = nt.base;
    let b = nt.apex.norm();
    let a = (nt.apex - r).norm();
    let cos = ((a * a + b * b - r * r) / (2.0 * a * b)).clamp(-1.0, 1.0);
    cos.acos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApexClass {
    /// Apex in the closed disc on the base as diameter: angle at least pi/2.
    InD1,
    /// Apex outside that disc: acute triangle.
    InD2,
}

pub fn classify_apex(nt: &NormalTriangle) -> ApexClass {
    let half = nt.base / 2.0;
    if (nt.apex - half).norm() <= half {
        ApexClass::InD1
    } else {
        ApexClass::InD2
    }
}

/// Whether the apex angle is at least a right angle, decided by the sign of
/// the dot product of the two sides meeting at the apex.
pub fn is_right_or_obtuse(nt: &NormalTriangle) -> bool {
    super::dot(-nt.apex, PlanePoint::new(nt.base, 0.0) - nt.apex) <= 0.0
}
