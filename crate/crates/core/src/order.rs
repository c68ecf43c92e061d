//! Projection order along a chord, the per-edge sign sequence of a polygon
//! and the chain-versus-segment crossing predicate.
//!
//! Points of a disk are compared by where their orthogonal projections land
//! on the line `L(p, q)`, with `p` before `q`. On the sphere projections are
//! taken inside the open hemisphere centred at the midpoint of `L(p, q) ∩ C`;
//! a point outside that hemisphere is a domain error rather than a guess.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::planar::{self, HitPoint, PlanarHit, P2};
use crate::geometry::vec3::dot;
use crate::geometry::{Disk, GPoint, GeodesicLine, Geometry, MODEL_TOL};

/// Two projections closer than this (in arc length) are equal.
pub const ORDER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrderRel {
    Less,
    Equal,
    Greater,
}

/// The order `≤_pq` on the points of a disk.
#[derive(Debug, Clone, Copy)]
pub struct ProjectionOrderContext {
    geometry: Geometry,
    p: GPoint,
    q: GPoint,
    disk: Disk,
    hemisphere_center: Option<GPoint>,
    line: GeodesicLine,
}

impl ProjectionOrderContext {
    pub fn new(geometry: Geometry, p: GPoint, q: GPoint, disk: Disk) -> Result<Self> {
        if disk.geometry() != geometry {
            return Err(Error::usage("disk belongs to a different geometry"));
        }
        if !disk.contains(p) || !disk.contains(q) {
            return Err(Error::domain("p and q must lie in the disk"));
        }
        let line = GeodesicLine::through(geometry, p, q)?;
        let (line, hemisphere_center) = match geometry {
            Geometry::Spherical => {
                // The midpoint of L(p,q) ∩ C is the foot of the disk center.
                let mid = line.foot(disk.center())?;
                (line.reanchored(disk.center())?, Some(mid))
            }
            _ => (line, None),
        };
        Ok(ProjectionOrderContext {
            geometry,
            p,
            q,
            disk,
            hemisphere_center,
            line,
        })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn p(&self) -> GPoint {
        self.p
    }

    pub fn q(&self) -> GPoint {
        self.q
    }

    pub fn disk(&self) -> &Disk {
        &self.disk
    }

    pub fn hemisphere_center(&self) -> Option<GPoint> {
        self.hemisphere_center
    }

    /// The line `L(p, q)`, oriented from `p` to `q`.
    pub fn line(&self) -> &GeodesicLine {
        &self.line
    }

    /// Chart center used for incidence tests in this context.
    pub(crate) fn chart_center(&self) -> GPoint {
        self.hemisphere_center.unwrap_or_else(|| self.disk.center())
    }

    /// Signed arc-length position of the projection of `x` on `L(p, q)`.
    pub fn coordinate(&self, x: GPoint) -> Result<f64> {
        if let Some(h) = self.hemisphere_center {
            if dot(x.0, h.0) <= MODEL_TOL {
                return Err(Error::domain(
                    "point lies outside the hemisphere of the projection order",
                ));
            }
        }
        Ok(self.line.coordinate(x))
    }

    pub fn compare(&self, x: GPoint, y: GPoint) -> Result<OrderRel> {
        let (sx, sy) = (self.coordinate(x)?, self.coordinate(y)?);
        Ok(if (sx - sy).abs() <= ORDER_TOL {
            OrderRel::Equal
        } else if sx < sy {
            OrderRel::Less
        } else {
            OrderRel::Greater
        })
    }

    /// `x ≤_pq y`
    pub fn le(&self, x: GPoint, y: GPoint) -> Result<bool> {
        Ok(self.compare(x, y)? != OrderRel::Greater)
    }

    /// Per-edge signs of a polygon whose first edge is `[p, q]`.
    ///
    /// `vertices` lists `a_1, …, a_n` with `a_1 = q` and `a_n = p`. Entry `j`
    /// (for `j = 0..=n`) is the sign of the edge `(a_j, a_{j+1})` with
    /// indices taken cyclically, so entries `0` and `n` both describe the
    /// edge `[p, q]` and equal `+1`.
    pub fn sign_sequence(&self, vertices: &[GPoint]) -> Result<SignSequence> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::usage("a polygon needs at least three vertices"));
        }
        let g = self.geometry;
        if g.dist(vertices[0], self.q) > 1e-12 || g.dist(vertices[n - 1], self.p) > 1e-12 {
            return Err(Error::usage("vertices must start at q and end at p"));
        }
        let at = |j: usize| vertices[(j + n - 1) % n];
        let values = (0..=n)
            .map(|j| {
                Ok(match self.compare(at(j), at(j + 1))? {
                    OrderRel::Less => 1,
                    OrderRel::Greater => -1,
                    OrderRel::Equal => 0,
                })
            })
            .collect::<Result<Vec<i8>>>()?;
        Ok(SignSequence { values })
    }

    /// Whether the chain `[a,b] ∪ [b,c]` crosses the open segment `(p,q)`.
    pub fn chain_crosses(&self, a: GPoint, b: GPoint, c: GPoint) -> Result<bool> {
        chain_crosses_in(self.geometry, self.p, self.q, a, b, c, Some(self.chart_center()))
    }
}

/// Edge signs `+1` (advance), `-1` (retreat) and `0` (stall) along `L(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignSequence {
    values: Vec<i8>,
}

impl SignSequence {
    /// Build from raw signs; every entry must be `-1`, `0` or `1`.
    pub fn from_values(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|v| !(-1..=1).contains(v)) {
            return Err(Error::usage("sign entries must be -1, 0 or 1"));
        }
        Ok(SignSequence { values })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Smallest `i` such that entries `i` and `i + 1` are both nonnegative or
/// both nonpositive. Zero counts as both.
///
/// For a sequence of even length whose first and last entries are equal and
/// nonzero such an index always exists; `None` therefore signals a broken
/// upstream invariant.
pub fn find_nonalternating_pair(seq: &SignSequence) -> Option<usize> {
    seq.values
        .windows(2)
        .position(|w| (w[0] >= 0 && w[1] >= 0) || (w[0] <= 0 && w[1] <= 0))
}

/// Whether `[a,b] ∪ [b,c]` and `[p,q]` cross, i.e. whether
/// `(p,q) ∩ ((a,b] ∪ [b,c))` is neither empty nor a single segment (a lone
/// point counts as a degenerate segment).
pub fn chain_crosses_segment(
    geometry: Geometry,
    p: GPoint,
    q: GPoint,
    a: GPoint,
    b: GPoint,
    c: GPoint,
) -> Result<bool> {
    chain_crosses_in(geometry, p, q, a, b, c, None)
}

/// A piece of the line `L(p,q)` in the chart parameter `t` (p at 0, q at 1).
#[derive(Debug, Clone, Copy)]
struct Piece {
    lo: f64,
    lo_closed: bool,
    hi: f64,
    hi_closed: bool,
}

impl Piece {
    fn is_empty(&self, eps: f64) -> bool {
        if self.hi - self.lo > eps {
            false
        } else if self.lo - self.hi > eps {
            true
        } else {
            !(self.lo_closed && self.hi_closed)
        }
    }
}

fn chain_crosses_in(
    geometry: Geometry,
    p: GPoint,
    q: GPoint,
    a: GPoint,
    b: GPoint,
    c: GPoint,
    center: Option<GPoint>,
) -> Result<bool> {
    let pts = [p, q, a, b, c];
    let center = match center {
        Some(c) => c,
        None => geometry.centroid(&pts)?,
    };
    let (_, img) = geometry.chart_around(center, &pts)?;
    let [cp, cq, ca, cb, cc] = [img[0], img[1], img[2], img[3], img[4]];
    let scale = img
        .iter()
        .flat_map(|u| u.iter())
        .fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()));
    let dir = [cq[0] - cp[0], cq[1] - cp[1]];
    let len2 = dir[0] * dir[0] + dir[1] * dir[1];
    if len2.sqrt() <= planar::ORIENT_TOL * scale {
        return Err(Error::domain("p and q coincide"));
    }
    let eps = planar::ORIENT_TOL * scale / len2.sqrt();
    let param = |x: P2| ((x[0] - cp[0]) * dir[0] + (x[1] - cp[1]) * dir[1]) / len2;

    // (a,b] excludes a; [b,c) excludes c.
    let first = arm_piece(cp, cq, ca, cb, param, eps, scale);
    let second = arm_piece(cp, cq, cc, cb, param, eps, scale);
    let pieces: Vec<Piece> = [first, second]
        .into_iter()
        .flatten()
        .map(|pc| open_at_pq(pc, eps))
        .filter(|pc| !pc.is_empty(eps))
        .collect();
    if pieces.len() < 2 {
        return Ok(false);
    }
    let (mut lo, mut hi) = (pieces[0], pieces[1]);
    if hi.lo < lo.lo {
        std::mem::swap(&mut lo, &mut hi);
    }
    let connected = if lo.hi > hi.lo + eps {
        true
    } else if hi.lo - lo.hi > eps {
        false
    } else {
        lo.hi_closed || hi.lo_closed
    };
    Ok(!connected)
}

/// Intersection of `[p,q]` with the arm `[excluded, shared]`, with the
/// `excluded` endpoint removed.
fn arm_piece(
    cp: P2,
    cq: P2,
    excluded: P2,
    shared: P2,
    param: impl Fn(P2) -> f64,
    eps: f64,
    scale: f64,
) -> Option<Piece> {
    let arm_len = (excluded[0] - shared[0]).hypot(excluded[1] - shared[1]);
    if arm_len <= planar::ORIENT_TOL * scale {
        // (a,a] is empty.
        return None;
    }
    let four = [cp, cq, excluded, shared];
    let (t0, t1) = match planar::classify(cp, cq, excluded, shared) {
        PlanarHit::Disjoint => return None,
        PlanarHit::Point(HitPoint::Endpoint(i)) => {
            let t = param(four[i]);
            (t, t)
        }
        PlanarHit::Point(HitPoint::Interior(u)) => {
            let t = param(u);
            (t, t)
        }
        PlanarHit::Overlap(i, j) => {
            let (x, y) = (param(four[i]), param(four[j]));
            (x.min(y), x.max(y))
        }
    };
    let te = param(excluded);
    let on_line = planar::orient(cp, cq, excluded).abs() <= planar::ORIENT_TOL * scale * scale;
    let lo_closed = !(on_line && (t0 - te).abs() <= eps);
    let hi_closed = !(on_line && (t1 - te).abs() <= eps);
    Some(Piece {
        lo: t0,
        lo_closed,
        hi: t1,
        hi_closed,
    })
}

/// Restrict a piece of `[p,q]` to the open segment `(p,q)`.
fn open_at_pq(mut pc: Piece, eps: f64) -> Piece {
    if pc.lo <= eps {
        pc.lo = pc.lo.max(0.0);
        pc.lo_closed = false;
    }
    if pc.hi >= 1.0 - eps {
        pc.hi = pc.hi.min(1.0);
        pc.hi_closed = false;
    }
    pc
}
