//! Metric kernel for the Euclidean plane, the hyperbolic plane and the sphere.
//!
//! All three geometries store points as 3-vectors in a canonical model:
//!
//! * E²: the affine plane `z = 1`,
//! * H²: the upper sheet of the hyperboloid `x² + y² - t² = -1`,
//! * S²: the unit sphere.
//!
//! With this layout the point `(0, 0, 1)` is the origin of every model and
//! the tangent plane there is the `xy`-plane, so rotations about the `z`-axis
//! are isometries of all three geometries. Incidence questions are answered
//! in a projective chart where geodesics are straight: the identity for E²,
//! the Klein disk for H² and the gnomonic plane for S².

mod disk;
mod isometry;
mod line;
pub(crate) mod planar;
pub(crate) mod vec3;

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use disk::Disk;
pub use isometry::Isometry;
pub use line::GeodesicLine;

use crate::error::{Error, Result};
use planar::{HitPoint, PlanarHit};
use vec3::{add, cross, dot, lin, mdot, norm, scale, sub, V3};

/// Residual allowed on the model constraint after normalization.
pub const MODEL_TOL: f64 = 1e-12;

/// Largest hyperbolic radius accepted for disks. Beyond this the Klein chart
/// radius `tanh r` is within a few ulps of one.
pub const MAX_HYPERBOLIC_RADIUS: f64 = 15.0;

/// Which constant-curvature plane an operation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Geometry {
    #[serde(rename = "e2")]
    Euclidean,
    #[serde(rename = "h2")]
    Hyperbolic,
    #[serde(rename = "s2")]
    Spherical,
}

impl Geometry {
    pub const ALL: [Geometry; 3] = [Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Spherical];

    pub fn short_name(self) -> &'static str {
        match self {
            Geometry::Euclidean => "e2",
            Geometry::Hyperbolic => "h2",
            Geometry::Spherical => "s2",
        }
    }

    /// Name of the projective chart used for incidence and rendering.
    pub fn chart_name(self) -> &'static str {
        match self {
            Geometry::Euclidean => "Euclidean plane",
            Geometry::Hyperbolic => "Klein disk",
            Geometry::Spherical => "gnomonic projection",
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e2" | "euclidean" => Ok(Geometry::Euclidean),
            "h2" | "hyperbolic" => Ok(Geometry::Hyperbolic),
            "s2" | "spherical" => Ok(Geometry::Spherical),
            other => Err(Error::usage(format!("unknown geometry `{other}`"))),
        }
    }
}

/// A point in the canonical model of some geometry.
///
/// The point does not remember its geometry; the [`Geometry`] value passed
/// alongside it does. Construct points through [`Geometry`] methods so the
/// model constraint holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct GPoint(pub(crate) V3);

impl GPoint {
    pub fn coords(&self) -> [f64; 3] {
        self.0
    }
}

/// A geodesic segment between two distinct (non-antipodal) points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GSegment {
    a: GPoint,
    b: GPoint,
}

impl GSegment {
    pub fn new(ctx: Geometry, a: GPoint, b: GPoint) -> Result<Self> {
        if ctx.dist(a, b) <= MODEL_TOL {
            return Err(Error::domain("segment endpoints coincide"));
        }
        if ctx == Geometry::Spherical && norm(add(a.0, b.0)) <= MODEL_TOL {
            return Err(Error::domain("segment endpoints are antipodal"));
        }
        Ok(GSegment { a, b })
    }

    pub fn a(&self) -> GPoint {
        self.a
    }

    pub fn b(&self) -> GPoint {
        self.b
    }
}

/// Result of intersecting two closed geodesic segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Intersection {
    Disjoint,
    Point(GPoint),
    Overlap(GSegment),
}

impl Geometry {
    /// The origin `(0, 0, 1)`, shared by all three models.
    pub fn origin(self) -> GPoint {
        GPoint([0.0, 0.0, 1.0])
    }

    /// Validate raw model coordinates and snap them onto the model.
    pub fn point(self, coords: [f64; 3]) -> Result<GPoint> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("non-finite coordinates"));
        }
        let [x, y, z] = coords;
        match self {
            Geometry::Euclidean => {
                if (z - 1.0).abs() > 1e-9 {
                    return Err(Error::domain("Euclidean points need z = 1"));
                }
                Ok(GPoint([x, y, 1.0]))
            }
            Geometry::Hyperbolic => {
                let q = mdot(coords, coords);
                if z <= 0.0 || (q + 1.0).abs() > 1e-9 * z * z {
                    return Err(Error::domain("point is not on the upper hyperboloid sheet"));
                }
                Ok(self.normalize(coords))
            }
            Geometry::Spherical => {
                if (norm(coords) - 1.0).abs() > 1e-9 {
                    return Err(Error::domain("point is not on the unit sphere"));
                }
                Ok(self.normalize(coords))
            }
        }
    }

    /// Snap a vector that is already close to the model back onto it.
    pub(crate) fn normalize(self, v: V3) -> GPoint {
        match self {
            Geometry::Euclidean => GPoint([v[0] / v[2], v[1] / v[2], 1.0]),
            Geometry::Hyperbolic => {
                // Keep the spatial part and recompute the time coordinate.
                let s = (-mdot(v, v)).sqrt();
                let (x, y) = (v[0] / s, v[1] / s);
                GPoint([x, y, (1.0 + x * x + y * y).sqrt()])
            }
            Geometry::Spherical => GPoint(scale(v, 1.0 / norm(v))),
        }
    }

    /// The point at geodesic offset `(dx, dy)` from the origin.
    pub fn exp_origin(self, dx: f64, dy: f64) -> GPoint {
        let d = dx.hypot(dy);
        if d == 0.0 {
            return self.origin();
        }
        let (ux, uy) = (dx / d, dy / d);
        match self {
            Geometry::Euclidean => GPoint([dx, dy, 1.0]),
            Geometry::Hyperbolic => {
                let s = d.sinh();
                GPoint([s * ux, s * uy, d.cosh()])
            }
            Geometry::Spherical => {
                let s = d.sin();
                GPoint([s * ux, s * uy, d.cos()])
            }
        }
    }

    /// Inverse of [`Geometry::exp_origin`]: the tangent vector at the origin
    /// pointing at `x`, with length equal to the distance.
    pub fn log_origin(self, x: GPoint) -> [f64; 2] {
        let [a, b, _] = x.0;
        let planar = a.hypot(b);
        if planar == 0.0 {
            return [0.0, 0.0];
        }
        let d = self.dist(self.origin(), x);
        [a / planar * d, b / planar * d]
    }

    /// Chart image of `x`: identity (E²), Klein disk (H²), gnomonic plane
    /// tangent at the origin (S², upper hemisphere only).
    pub fn to_chart(self, x: GPoint) -> Result<[f64; 2]> {
        let [a, b, c] = x.0;
        match self {
            Geometry::Euclidean => Ok([a, b]),
            Geometry::Hyperbolic => Ok([a / c, b / c]),
            Geometry::Spherical => {
                if c <= MODEL_TOL {
                    return Err(Error::domain("point outside the open chart hemisphere"));
                }
                Ok([a / c, b / c])
            }
        }
    }

    pub fn from_chart(self, u: [f64; 2]) -> Result<GPoint> {
        let [a, b] = u;
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::domain("non-finite chart coordinates"));
        }
        match self {
            Geometry::Euclidean => Ok(GPoint([a, b, 1.0])),
            Geometry::Hyperbolic => {
                let w = 1.0 - a * a - b * b;
                if w <= 0.0 {
                    return Err(Error::domain("chart point outside the Klein disk"));
                }
                let s = w.sqrt();
                Ok(GPoint([a / s, b / s, 1.0 / s]))
            }
            Geometry::Spherical => Ok(self.normalize([a, b, 1.0])),
        }
    }

    /// Chart radius of the circle of geodesic radius `r` about the origin.
    pub fn chart_radius(self, r: f64) -> f64 {
        match self {
            Geometry::Euclidean => r,
            Geometry::Hyperbolic => r.tanh(),
            Geometry::Spherical => r.tan(),
        }
    }

    /// Check that `r` is a usable disk radius in this geometry.
    pub fn validate_radius(self, r: f64) -> Result<()> {
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::domain(format!("radius must be positive and finite, got {r}")));
        }
        match self {
            Geometry::Spherical if r >= FRAC_PI_2 => Err(Error::domain(format!(
                "spherical radius must be below pi/2, got {r}"
            ))),
            Geometry::Hyperbolic if r > MAX_HYPERBOLIC_RADIUS => Err(Error::domain(format!(
                "hyperbolic radius must be at most {MAX_HYPERBOLIC_RADIUS}, got {r}"
            ))),
            _ => Ok(()),
        }
    }

    /// Geodesic distance. Fails only for antipodal points on the sphere.
    pub fn distance(self, x: GPoint, y: GPoint) -> Result<f64> {
        if self == Geometry::Spherical && norm(add(x.0, y.0)) <= MODEL_TOL {
            return Err(Error::domain("distance between antipodal points is not unique"));
        }
        Ok(self.dist(x, y))
    }

    /// Infallible distance used on hot paths where antipodal pairs cannot occur.
    #[inline]
    pub(crate) fn dist(self, x: GPoint, y: GPoint) -> f64 {
        match self {
            Geometry::Euclidean => (x.0[0] - y.0[0]).hypot(x.0[1] - y.0[1]),
            Geometry::Hyperbolic => {
                // |x - y|² in the Lorentz metric equals 4 sinh²(d/2).
                let d = sub(x.0, y.0);
                2.0 * (mdot(d, d).max(0.0).sqrt() / 2.0).asinh()
            }
            Geometry::Spherical => norm(cross(x.0, y.0)).atan2(dot(x.0, y.0)),
        }
    }

    /// Diameter of a disk of radius `r`.
    pub fn diameter(self, r: f64) -> f64 {
        2.0 * r
    }

    /// Length of the chord of a circle of radius `r` subtending
    /// `central_angle` at the center.
    pub fn chord_length(self, r: f64, central_angle: f64) -> Result<f64> {
        self.validate_radius(r)?;
        if !(0.0..=TAU).contains(&central_angle) {
            return Err(Error::domain(format!(
                "central angle must lie in [0, 2pi], got {central_angle}"
            )));
        }
        Ok(self.chord_unchecked(r, central_angle))
    }

    /// Half-angle forms of the law of cosines, stable for small chords:
    /// `sin(c/2) = sin r sin(a/2)` on S² and `sinh(c/2) = sinh r sin(a/2)` on H².
    pub(crate) fn chord_unchecked(self, r: f64, central_angle: f64) -> f64 {
        let h = (central_angle / 2.0).sin().abs();
        match self {
            Geometry::Euclidean => 2.0 * r * h,
            Geometry::Hyperbolic => 2.0 * (r.sinh() * h).asinh(),
            Geometry::Spherical => 2.0 * (r.sin() * h).min(1.0).asin(),
        }
    }

    /// Derivative of [`Geometry::chord_length`] with respect to the central angle.
    pub(crate) fn chord_derivative(self, r: f64, central_angle: f64) -> f64 {
        let (s, c) = (central_angle / 2.0).sin_cos();
        match self {
            Geometry::Euclidean => r * c,
            Geometry::Hyperbolic => {
                let k = r.sinh();
                k * c / (1.0 + k * k * s * s).sqrt()
            }
            Geometry::Spherical => {
                let k = r.sin();
                k * c / (1.0 - k * k * s * s).max(f64::MIN_POSITIVE).sqrt()
            }
        }
    }

    /// Point at distance `disk.radius` from the center, leaving the center at
    /// `direction_angle` in the disk's tangent frame.
    pub fn circle_boundary_point(self, disk: &Disk, direction_angle: f64) -> GPoint {
        disk.boundary_point(direction_angle)
    }

    /// Orthogonal projection of `x` onto the geodesic through `p` and `q`.
    ///
    /// On S² the foot is taken in the open hemisphere centred at the
    /// midpoint of `[p, q]`; use [`GeodesicLine::foot_within`] for another
    /// hemisphere.
    pub fn project_to_line(self, x: GPoint, p: GPoint, q: GPoint) -> Result<GPoint> {
        let line = GeodesicLine::through(self, p, q)?;
        match self {
            Geometry::Spherical => {
                let mid = self.normalize(add(p.0, q.0));
                line.foot_within(x, mid)
            }
            _ => line.foot(x),
        }
    }

    /// Normalized barycenter of a point set; used to pick a chart center.
    pub(crate) fn centroid(self, pts: &[GPoint]) -> Result<GPoint> {
        let sum = pts.iter().fold([0.0; 3], |acc, p| add(acc, p.0));
        match self {
            Geometry::Euclidean => {
                let n = pts.len() as f64;
                Ok(GPoint([sum[0] / n, sum[1] / n, 1.0]))
            }
            Geometry::Hyperbolic => Ok(self.normalize(sum)),
            Geometry::Spherical => {
                if norm(sum) <= 1e-9 {
                    return Err(Error::domain("points do not lie in a common open hemisphere"));
                }
                Ok(self.normalize(sum))
            }
        }
    }

    /// Map points into the projective chart centred at `center`.
    pub(crate) fn chart_around(self, center: GPoint, pts: &[GPoint]) -> Result<(Isometry, Vec<[f64; 2]>)> {
        let frame = Isometry::translation_to(self, center);
        let inv = frame.inverse();
        let images = pts
            .iter()
            .map(|&p| self.to_chart(inv.apply(p)))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::domain("points do not lie in the open hemisphere about the chart center"))?;
        Ok((frame, images))
    }

    /// Intersection of two closed segments, charted about their barycenter.
    pub fn segments_intersect(self, s1: &GSegment, s2: &GSegment) -> Result<Intersection> {
        self.segments_intersect_within(s1, s2, None)
    }

    /// Like [`Geometry::segments_intersect`] but with an explicit chart
    /// center. On S² all four endpoints must lie in the open hemisphere about
    /// `center`.
    pub fn segments_intersect_within(
        self,
        s1: &GSegment,
        s2: &GSegment,
        center: Option<GPoint>,
    ) -> Result<Intersection> {
        let pts = [s1.a, s1.b, s2.a, s2.b];
        let center = match center {
            Some(c) => c,
            None => self.centroid(&pts)?,
        };
        let (frame, img) = self.chart_around(center, &pts)?;
        let hit = planar::classify(img[0], img[1], img[2], img[3]);
        Ok(match hit {
            PlanarHit::Disjoint => Intersection::Disjoint,
            PlanarHit::Point(HitPoint::Endpoint(i)) => Intersection::Point(pts[i]),
            PlanarHit::Point(HitPoint::Interior(u)) => {
                Intersection::Point(frame.apply(self.from_chart(u)?))
            }
            PlanarHit::Overlap(i, j) => Intersection::Overlap(GSegment { a: pts[i], b: pts[j] }),
        })
    }

    /// Point `s` of the way from `a` to `b` measured in arc length
    /// (`s` in `[0, 1]`).
    pub fn interpolate(self, a: GPoint, b: GPoint, s: f64) -> GPoint {
        let d = self.dist(a, b);
        if d == 0.0 {
            return a;
        }
        match self {
            Geometry::Euclidean => GPoint(lin(1.0 - s, a.0, s, b.0)),
            Geometry::Hyperbolic => {
                let k = d.sinh();
                self.normalize(lin(((1.0 - s) * d).sinh() / k, a.0, (s * d).sinh() / k, b.0))
            }
            Geometry::Spherical => {
                let k = d.sin();
                self.normalize(lin(((1.0 - s) * d).sin() / k, a.0, (s * d).sin() / k, b.0))
            }
        }
    }

    /// Reflection of `x` across the perpendicular bisector of `[a, b]`.
    pub fn reflect_across_bisector(self, a: GPoint, b: GPoint, x: GPoint) -> GPoint {
        let n = sub(a.0, b.0);
        match self {
            Geometry::Euclidean => {
                let mid = lin(0.5, a.0, 0.5, b.0);
                let k = 2.0 * dot(sub(x.0, mid), n) / dot(n, n);
                GPoint([x.0[0] - k * n[0], x.0[1] - k * n[1], 1.0])
            }
            Geometry::Hyperbolic => {
                let k = 2.0 * mdot(x.0, n) / mdot(n, n);
                self.normalize(sub(x.0, scale(n, k)))
            }
            Geometry::Spherical => {
                let k = 2.0 * dot(x.0, n) / dot(n, n);
                self.normalize(sub(x.0, scale(n, k)))
            }
        }
    }

    /// Check the model constraint of a point (used by tests and debug checks).
    pub fn model_residual(self, x: GPoint) -> f64 {
        match self {
            Geometry::Euclidean => (x.0[2] - 1.0).abs(),
            Geometry::Hyperbolic => (mdot(x.0, x.0) + 1.0).abs(),
            Geometry::Spherical => (norm(x.0) - 1.0).abs(),
        }
    }
}

/// Angle normalized into `[0, 2pi)`.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}
