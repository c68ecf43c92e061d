use std::f64::consts::TAU;

use rand::Rng;
use serde::Serialize;

use super::{GPoint, Geometry, Isometry};
use crate::error::Result;

/// Containment slack for points on the boundary circle.
pub const CONTAIN_TOL: f64 = 1e-12;

/// A closed geodesic disk.
///
/// The disk carries a tangent frame at its center (the image of the frame
/// at the origin under [`Isometry::translation_to`]); boundary angles are
/// measured in that frame, counterclockwise in the chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Disk {
    geometry: Geometry,
    center: GPoint,
    radius: f64,
    #[serde(skip)]
    frame: Isometry,
    #[serde(skip)]
    frame_inv: Isometry,
}

impl Disk {
    pub fn new(geometry: Geometry, center: GPoint, radius: f64) -> Result<Self> {
        geometry.validate_radius(radius)?;
        let frame = Isometry::translation_to(geometry, center);
        Ok(Disk {
            geometry,
            center,
            radius,
            frame,
            frame_inv: frame.inverse(),
        })
    }

    /// Disk of radius `radius` about the origin.
    pub fn centered(geometry: Geometry, radius: f64) -> Result<Self> {
        Self::new(geometry, geometry.origin(), radius)
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn center(&self) -> GPoint {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Isometry carrying the origin (and its frame) to the center.
    pub fn frame(&self) -> &Isometry {
        &self.frame
    }

    pub fn contains(&self, x: GPoint) -> bool {
        self.geometry.dist(self.center, x) <= self.radius + CONTAIN_TOL
    }

    pub fn boundary_point(&self, angle: f64) -> GPoint {
        self.point_at_polar(self.radius, angle)
    }

    /// Point at geodesic distance `rho` from the center in direction `angle`.
    pub fn point_at_polar(&self, rho: f64, angle: f64) -> GPoint {
        let (s, c) = angle.sin_cos();
        self.frame.apply(self.geometry.exp_origin(rho * c, rho * s))
    }

    /// Direction angle of `x` seen from the center, in `[0, 2pi)`.
    pub fn angle_of(&self, x: GPoint) -> f64 {
        let local = self.frame_inv.apply(x);
        super::wrap_angle(local.0[1].atan2(local.0[0]))
    }

    /// Chart radius of the boundary circle in the disk-centred chart.
    pub fn chart_radius(&self) -> f64 {
        self.geometry.chart_radius(self.radius)
    }

    /// Chart coordinates of `x` in the chart centred at the disk center.
    pub fn to_local_chart(&self, x: GPoint) -> Result<[f64; 2]> {
        self.geometry.to_chart(self.frame_inv.apply(x))
    }

    pub fn from_local_chart(&self, u: [f64; 2]) -> Result<GPoint> {
        Ok(self.frame.apply(self.geometry.from_chart(u)?))
    }

    /// A point drawn uniformly with respect to area.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> GPoint {
        let u: f64 = rng.gen();
        let angle = rng.gen::<f64>() * TAU;
        let r = self.radius;
        let rho = match self.geometry {
            Geometry::Euclidean => r * u.sqrt(),
            Geometry::Hyperbolic => (1.0 + u * (r.cosh() - 1.0)).acosh(),
            Geometry::Spherical => (1.0 - u * (1.0 - r.cos())).acos(),
        };
        self.point_at_polar(rho, angle)
    }
}
