use super::vec3::{mat_mul, mat_vec, M3, IDENTITY};
use super::{GPoint, Geometry};

/// A linear isometry of one of the canonical models.
///
/// E² uses affine matrices acting on `(x, y, 1)`, H² Lorentz
/// transformations, S² rotations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    geometry: Geometry,
    m: M3,
}

impl Isometry {
    pub fn identity(geometry: Geometry) -> Self {
        Isometry { geometry, m: IDENTITY }
    }

    /// Rotation by `angle` about the origin.
    pub fn rotation(geometry: Geometry, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Isometry {
            geometry,
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Reflection in the `x`-axis through the origin.
    pub fn reflection(geometry: Geometry) -> Self {
        Isometry {
            geometry,
            m: [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// The translation (boost, rotation) along the geodesic from the origin
    /// that carries the origin to `target`.
    pub fn translation_to(geometry: Geometry, target: GPoint) -> Self {
        let [x, y, z] = target.0;
        let m = match geometry {
            Geometry::Euclidean => [[1.0, 0.0, x], [0.0, 1.0, y], [0.0, 0.0, 1.0]],
            Geometry::Hyperbolic => {
                let k = 1.0 / (1.0 + z);
                [
                    [1.0 + x * x * k, x * y * k, x],
                    [x * y * k, 1.0 + y * y * k, y],
                    [x, y, z],
                ]
            }
            Geometry::Spherical if z >= 0.0 => sphere_turn(x, y, z),
            Geometry::Spherical => {
                // Route through the south pole to avoid dividing by 1 + z ≈ 0.
                let flip = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];
                mat_mul(&flip, &sphere_turn(x, -y, -z))
            }
        };
        Isometry { geometry, m }
    }

    pub fn apply(&self, p: GPoint) -> GPoint {
        self.geometry.normalize(mat_vec(&self.m, p.0))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            geometry: self.geometry,
            m: mat_mul(&self.m, &other.m),
        }
    }

    pub fn inverse(&self) -> Isometry {
        let m = &self.m;
        let inv = match self.geometry {
            Geometry::Euclidean => {
                // [[R, t], [0, 1]]⁻¹ = [[Rᵀ, -Rᵀt], [0, 1]]; R may be a reflection.
                let rt = [[m[0][0], m[1][0]], [m[0][1], m[1][1]]];
                let t = [m[0][2], m[1][2]];
                [
                    [rt[0][0], rt[0][1], -(rt[0][0] * t[0] + rt[0][1] * t[1])],
                    [rt[1][0], rt[1][1], -(rt[1][0] * t[0] + rt[1][1] * t[1])],
                    [0.0, 0.0, 1.0],
                ]
            }
            // J Mᵀ J with J = diag(1, 1, -1).
            Geometry::Hyperbolic => [
                [m[0][0], m[1][0], -m[2][0]],
                [m[0][1], m[1][1], -m[2][1]],
                [-m[0][2], -m[1][2], m[2][2]],
            ],
            Geometry::Spherical => [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        };
        Isometry {
            geometry: self.geometry,
            m: inv,
        }
    }
}

/// Rotation carrying the north pole to `(x, y, z)` with `z >= 0` along a
/// great circle.
fn sphere_turn(x: f64, y: f64, z: f64) -> M3 {
    let k = 1.0 / (1.0 + z);
    [
        [1.0 - x * x * k, -x * y * k, x],
        [-x * y * k, 1.0 - y * y * k, y],
        [-x, -y, z],
    ]
}
