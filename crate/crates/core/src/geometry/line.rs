use super::vec3::{cross, dot, flip_t, lin, mdot, norm, scale, sub, V3};
use super::{Disk, GPoint, Geometry, MODEL_TOL};
use crate::error::{Error, Result};

/// A complete geodesic with an arc-length parametrization.
///
/// `point_at(0)` is the anchor, `point_at(s)` moves along the unit tangent
/// `dir`. `normal` is a unit vector orthogonal (in the model's inner
/// product) to every point of the line, so its sign splits the plane into
/// two sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicLine {
    geometry: Geometry,
    anchor: GPoint,
    dir: V3,
    normal: V3,
}

impl GeodesicLine {
    /// The line through `p` and `q`, anchored at `p` and oriented towards `q`.
    pub fn through(geometry: Geometry, p: GPoint, q: GPoint) -> Result<Self> {
        if geometry.dist(p, q) <= MODEL_TOL {
            return Err(Error::domain("line through coincident points"));
        }
        let dir = match geometry {
            Geometry::Euclidean => {
                let d = sub(q.0, p.0);
                scale(d, 1.0 / norm(d))
            }
            Geometry::Hyperbolic => {
                let d = lin(1.0, q.0, mdot(p.0, q.0), p.0);
                scale(d, 1.0 / mdot(d, d).sqrt())
            }
            Geometry::Spherical => {
                let d = lin(1.0, q.0, -dot(p.0, q.0), p.0);
                let n = norm(d);
                if n <= MODEL_TOL {
                    return Err(Error::domain("line through antipodal points"));
                }
                scale(d, 1.0 / n)
            }
        };
        Ok(Self::from_parts(geometry, p, dir))
    }

    fn from_parts(geometry: Geometry, anchor: GPoint, dir: V3) -> Self {
        let normal = match geometry {
            Geometry::Euclidean => [-dir[1], dir[0], 0.0],
            Geometry::Hyperbolic => {
                let n = flip_t(cross(anchor.0, dir));
                scale(n, 1.0 / mdot(n, n).sqrt())
            }
            Geometry::Spherical => cross(anchor.0, dir),
        };
        GeodesicLine {
            geometry,
            anchor,
            dir,
            normal,
        }
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn anchor(&self) -> GPoint {
        self.anchor
    }

    pub fn point_at(&self, s: f64) -> GPoint {
        let g = self.geometry;
        match g {
            Geometry::Euclidean => GPoint(lin(1.0, self.anchor.0, s, self.dir)),
            Geometry::Hyperbolic => g.normalize(lin(s.cosh(), self.anchor.0, s.sinh(), self.dir)),
            Geometry::Spherical => g.normalize(lin(s.cos(), self.anchor.0, s.sin(), self.dir)),
        }
    }

    /// Unit tangent of the line at `point_at(s)`.
    fn tangent_at(&self, s: f64) -> V3 {
        match self.geometry {
            Geometry::Euclidean => self.dir,
            Geometry::Hyperbolic => lin(s.sinh(), self.anchor.0, s.cosh(), self.dir),
            Geometry::Spherical => lin(-s.sin(), self.anchor.0, s.cos(), self.dir),
        }
    }

    /// Arc-length coordinate of the orthogonal projection of `x`.
    ///
    /// On S² the coordinate lies in `(-pi, pi]` around the anchor; callers
    /// keep points inside the hemisphere centred on the anchor.
    pub fn coordinate(&self, x: GPoint) -> f64 {
        let (a, b) = self.components(x);
        match self.geometry {
            Geometry::Euclidean => b,
            Geometry::Hyperbolic => (b / a).atanh(),
            Geometry::Spherical => b.atan2(a),
        }
    }

    /// Components of `x` along the anchor and the tangent direction.
    fn components(&self, x: GPoint) -> (f64, f64) {
        match self.geometry {
            Geometry::Euclidean => (1.0, dot(sub(x.0, self.anchor.0), self.dir)),
            Geometry::Hyperbolic => (-mdot(x.0, self.anchor.0), mdot(x.0, self.dir)),
            Geometry::Spherical => (dot(x.0, self.anchor.0), dot(x.0, self.dir)),
        }
    }

    /// Orthogonal projection of `x` onto the line.
    ///
    /// On S² this returns the foot nearer to `x`; it fails when `x` is a
    /// pole of the line.
    pub fn foot(&self, x: GPoint) -> Result<GPoint> {
        let (a, b) = self.components(x);
        match self.geometry {
            Geometry::Euclidean => Ok(self.point_at(b)),
            Geometry::Hyperbolic => Ok(self.point_at((b / a).atanh())),
            Geometry::Spherical => {
                if a.hypot(b) <= 1e-12 {
                    return Err(Error::domain("point is a pole of the line; projection undefined"));
                }
                Ok(self.point_at(b.atan2(a)))
            }
        }
    }

    /// Projection restricted to the open hemisphere centred at `center`
    /// (S² only; other geometries ignore `center`).
    pub fn foot_within(&self, x: GPoint, center: GPoint) -> Result<GPoint> {
        if self.geometry == Geometry::Spherical && dot(x.0, center.0) <= MODEL_TOL {
            return Err(Error::domain("point lies outside the hemisphere of the projection"));
        }
        self.foot(x)
    }

    /// Signed side of `x`: positive on the side the normal points to. The
    /// value is the sine (S²), hyperbolic sine (H²) or plain value (E²) of
    /// the signed distance to the line.
    pub fn side(&self, x: GPoint) -> f64 {
        match self.geometry {
            Geometry::Euclidean => dot(sub(x.0, self.anchor.0), self.normal),
            Geometry::Hyperbolic => mdot(x.0, self.normal),
            Geometry::Spherical => dot(x.0, self.normal),
        }
    }

    /// Re-anchor at the foot of `x` keeping the orientation.
    pub fn reanchored(&self, x: GPoint) -> Result<Self> {
        let s = self.coordinate(x);
        self.foot(x)?;
        Ok(self.reanchored_at(s))
    }

    pub fn reanchored_at(&self, s: f64) -> Self {
        let anchor = self.point_at(s);
        Self::from_parts(self.geometry, anchor, self.tangent_at(s))
    }

    /// The perpendicular line through `point_at(s)`, oriented along `normal`.
    pub fn perpendicular_at(&self, s: f64) -> Self {
        Self::from_parts(self.geometry, self.point_at(s), self.normal)
    }

    /// Coordinates where the line enters and leaves the closed disk, if it
    /// meets it.
    pub fn disk_crossings(&self, disk: &Disk) -> Option<(f64, f64)> {
        let g = self.geometry;
        let s0 = self.coordinate(disk.center());
        let foot = self.point_at(s0);
        let d0 = g.dist(disk.center(), foot);
        let r = disk.radius();
        if d0 > r {
            return None;
        }
        // Pythagoras in each geometry.
        let half = match g {
            Geometry::Euclidean => (r * r - d0 * d0).max(0.0).sqrt(),
            Geometry::Hyperbolic => (r.cosh() / d0.cosh()).max(1.0).acosh(),
            Geometry::Spherical => (r.cos() / d0.cos()).min(1.0).acos(),
        };
        Some((s0 - half, s0 + half))
    }
}
