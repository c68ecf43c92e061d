//! The isosceles-triangle perimeter bound for odd `n` and the diameter bound
//! for even `n`.
//!
//! An isosceles triangle inscribed in a circle of radius `r` is described by
//! its half apex arc `phi`: the two legs subtend central angles `2 phi` and
//! the base subtends `2 pi - 4 phi`. For odd `n` the supremum of perimeters
//! of simple `n`-gons in the disk is the maximum over `phi` of
//! `(n - 2) * base + 2 * leg`, the perimeter of the triangle with its base
//! traversed `n - 2` times.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Geometry;

/// Number of coarse grid cells used to bracket the global maximum.
pub const GRID_POINTS: usize = 10_000;

/// Target width of the refined bracket in `phi`.
pub const PHI_TOL: f64 = 1e-12;

/// Result of maximizing the isosceles objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoscelesBound {
    pub n: usize,
    pub geometry: Geometry,
    pub radius: f64,
    /// Half the central angle subtended by each leg.
    pub phi: f64,
    /// Central angle of the base, `2 pi - 4 phi`.
    pub central_angle_alpha: f64,
    /// Central angle of each leg, `2 phi`.
    pub central_angle_beta: f64,
    /// Base length.
    pub alpha: f64,
    /// Leg length.
    pub beta: f64,
    /// `(n - 2) * alpha + 2 * beta`
    pub value: f64,
    /// False for spherical radii above `pi/4`, where the bound is computed
    /// but the chain-lengthening argument behind it is not available.
    pub theorem_regime: bool,
}

pub(crate) fn check_odd(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::usage(format!("n must be at least 3, got {n}")));
    }
    if n.is_multiple_of(2) {
        return Err(Error::usage(format!("n must be odd, got {n}")));
    }
    Ok(())
}

pub(crate) fn check_even(n: usize) -> Result<()> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::usage(format!("n must be even and at least 4, got {n}")));
    }
    Ok(())
}

/// `(n - 2) * chord(r, 2 pi - 4 phi) + 2 * chord(r, 2 phi)` for `phi` in `(0, pi/2)`.
pub fn objective(g: Geometry, r: f64, n: usize, phi: f64) -> Result<f64> {
    g.validate_radius(r)?;
    check_odd(n)?;
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(Error::domain(format!("phi must lie in (0, pi/2), got {phi}")));
    }
    Ok(eval(g, r, n, phi))
}

#[inline]
fn eval(g: Geometry, r: f64, n: usize, phi: f64) -> f64 {
    (n - 2) as f64 * g.chord_unchecked(r, TAU - 4.0 * phi) + 2.0 * g.chord_unchecked(r, 2.0 * phi)
}

#[inline]
fn slope(g: Geometry, r: f64, n: usize, phi: f64) -> f64 {
    -4.0 * (n - 2) as f64 * g.chord_derivative(r, TAU - 4.0 * phi) + 4.0 * g.chord_derivative(r, 2.0 * phi)
}

/// Maximizer of the Euclidean objective from `(n-2) cos 2phi + cos phi = 0`.
pub fn euclidean_stationary_phi(n: usize) -> f64 {
    let m = (n - 2) as f64;
    ((-1.0 + (1.0 + 8.0 * m * m).sqrt()) / (4.0 * m)).acos()
}

/// Maximize the objective over `phi` in `(0, pi/2)`.
///
/// A coarse scan brackets the global maximum (no unimodality assumed), a
/// golden-section search narrows the bracket, and a bisection on the sign of
/// the analytic derivative polishes the stationary point below the
/// round-off floor of value comparisons.
pub fn optimal_bound(g: Geometry, r: f64, n: usize) -> Result<IsoscelesBound> {
    g.validate_radius(r)?;
    check_odd(n)?;
    let f = |phi: f64| eval(g, r, n, phi);

    let step = FRAC_PI_2 / GRID_POINTS as f64;
    let best = (1..GRID_POINTS)
        .map(|i| (i, f(i as f64 * step)))
        .fold((1, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let lo = (best.0 as f64 - 1.0) * step;
    let hi = (best.0 as f64 + 1.0) * step;
    let lo = if lo <= 0.0 { step * 1e-6 } else { lo };
    let hi = if hi >= FRAC_PI_2 { FRAC_PI_2 - step * 1e-6 } else { hi };

    let golden = golden_section_max(f, lo, hi, PHI_TOL);
    let mut phi = golden;
    if slope(g, r, n, lo) > 0.0 && slope(g, r, n, hi) < 0.0 {
        let polished = bisect_decreasing(|x| slope(g, r, n, x), lo, hi);
        if f(polished) >= f(golden) - 1e-13 * f(golden).abs().max(1.0) {
            phi = polished;
        }
    }

    let central_angle_alpha = TAU - 4.0 * phi;
    let central_angle_beta = 2.0 * phi;
    let alpha = g.chord_length(r, central_angle_alpha)?;
    let beta = g.chord_length(r, central_angle_beta)?;
    let value = (n - 2) as f64 * alpha + 2.0 * beta;

    if g == Geometry::Euclidean {
        let closed = f(euclidean_stationary_phi(n));
        if (closed - value).abs() > 1e-9 * value.max(1.0) {
            return Err(Error::Internal(format!(
                "optimizer value {value} disagrees with the closed form {closed}"
            )));
        }
    }

    Ok(IsoscelesBound {
        n,
        geometry: g,
        radius: r,
        phi,
        central_angle_alpha,
        central_angle_beta,
        alpha,
        beta,
        value,
        theorem_regime: g != Geometry::Spherical || r <= FRAC_PI_4,
    })
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
pub(crate) fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    0.5 * (a + b)
}

/// Root of a function that is positive at `a` and negative at `b`.
fn bisect_decreasing(d: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if d(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Perimeter of the inscribed equilateral triangle, the largest perimeter of
/// any triangle inscribed in the circle.
pub fn max_inscribed_triangle_perimeter(g: Geometry, r: f64) -> Result<f64> {
    Ok(3.0 * g.chord_length(r, TAU / 3.0)?)
}

/// `n` times the diameter: the supremum for even `n`.
pub fn even_n_supremum(g: Geometry, r: f64, n: usize) -> Result<f64> {
    g.validate_radius(r)?;
    check_even(n)?;
    Ok(n as f64 * g.diameter(r))
}

/// Supremum of perimeters of simple `n`-gons in a disk of radius `r`, for
/// either parity.
pub fn supremum(g: Geometry, r: f64, n: usize) -> Result<f64> {
    if n.is_multiple_of(2) {
        even_n_supremum(g, r, n)
    } else {
        Ok(optimal_bound(g, r, n)?.value)
    }
}
