//! Straight-segment predicates in a projective chart.
//!
//! Every geometry routes incidence questions through a chart in which
//! geodesics are straight lines, so this is the only place where
//! orientation tests live.

pub(crate) type P2 = [f64; 2];

/// Relative tolerance of the orientation predicate.
pub(crate) const ORIENT_TOL: f64 = 1e-12;

/// Index of one of the four endpoints `a0, a1, b0, b1` handed to [`classify`].
pub(crate) type EndpointIdx = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum HitPoint {
    Endpoint(EndpointIdx),
    Interior(P2),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum PlanarHit {
    Disjoint,
    Point(HitPoint),
    Overlap(EndpointIdx, EndpointIdx),
}

#[inline]
pub(crate) fn orient(a: P2, b: P2, c: P2) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

#[inline]
fn sign(v: f64, tol: f64) -> i8 {
    if v > tol {
        1
    } else if v < -tol {
        -1
    } else {
        0
    }
}

fn magnitude(pts: &[P2]) -> f64 {
    pts.iter()
        .flat_map(|p| p.iter())
        .fold(f64::MIN_POSITIVE, |m, c| m.max(c.abs()))
}

/// Classify the intersection of the closed segments `[a0, a1]` and `[b0, b1]`.
///
/// Both segments must be non-degenerate.
pub(crate) fn classify(a0: P2, a1: P2, b0: P2, b1: P2) -> PlanarHit {
    let pts = [a0, a1, b0, b1];
    let m = magnitude(&pts);
    let tol = ORIENT_TOL * m * m;

    let d1 = sign(orient(a0, a1, b0), tol);
    let d2 = sign(orient(a0, a1, b1), tol);
    let d3 = sign(orient(b0, b1, a0), tol);
    let d4 = sign(orient(b0, b1, a1), tol);

    if (d1 == 0 && d2 == 0) || (d3 == 0 && d4 == 0) {
        return collinear(&pts, m);
    }
    if d1 * d2 > 0 || d3 * d4 > 0 {
        return PlanarHit::Disjoint;
    }
    if d3 == 0 {
        return PlanarHit::Point(HitPoint::Endpoint(0));
    }
    if d4 == 0 {
        return PlanarHit::Point(HitPoint::Endpoint(1));
    }
    if d1 == 0 {
        return PlanarHit::Point(HitPoint::Endpoint(2));
    }
    if d2 == 0 {
        return PlanarHit::Point(HitPoint::Endpoint(3));
    }
    let oa0 = orient(b0, b1, a0);
    let oa1 = orient(b0, b1, a1);
    let t = oa0 / (oa0 - oa1);
    PlanarHit::Point(HitPoint::Interior([
        a0[0] + t * (a1[0] - a0[0]),
        a0[1] + t * (a1[1] - a0[1]),
    ]))
}

fn collinear(pts: &[P2; 4], m: f64) -> PlanarHit {
    let [a0, a1, b0, b1] = *pts;
    let dir = [a1[0] - a0[0], a1[1] - a0[1]];
    let len2 = dir[0] * dir[0] + dir[1] * dir[1];
    let param = |x: P2| ((x[0] - a0[0]) * dir[0] + (x[1] - a0[1]) * dir[1]) / len2;
    let ts = [0.0, 1.0, param(b0), param(b1)];
    let eps = ORIENT_TOL * m / len2.sqrt();

    let lo = ts[2].min(ts[3]).max(0.0);
    let hi = ts[2].max(ts[3]).min(1.0);
    if lo > hi + eps {
        return PlanarHit::Disjoint;
    }
    // Every endpoint of the overlap is one of the four input endpoints.
    let nearest = |t: f64| {
        (0..4)
            .min_by(|&i, &j| (ts[i] - t).abs().total_cmp(&(ts[j] - t).abs()))
            .unwrap()
    };
    let (i, j) = (nearest(lo), nearest(hi));
    if (hi - lo).abs() <= eps {
        PlanarHit::Point(HitPoint::Endpoint(i))
    } else {
        PlanarHit::Overlap(i, j)
    }
}
