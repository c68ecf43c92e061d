//! Simple polygons in a disk and the two near-extremal constructions.

use serde::{Deserialize, Serialize};

use crate::bound::{check_even, check_odd, optimal_bound};
use crate::error::{Error, Result};
use crate::geometry::planar::{classify, HitPoint, PlanarHit, P2};
use crate::geometry::{Disk, GPoint, Geometry, MODEL_TOL};

/// Version tag written into every serialized polygon.
pub const SCHEMA_VERSION: u32 = 1;

/// An ordered, closed vertex list.
///
/// Construction only checks that there are at least three vertices; call
/// [`SimplePolygon::is_simple`] to validate simplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    geometry: Geometry,
    vertices: Vec<GPoint>,
}

impl SimplePolygon {
    pub fn new(geometry: Geometry, vertices: Vec<GPoint>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::domain(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        Ok(SimplePolygon { geometry, vertices })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn vertices(&self) -> &[GPoint] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub(crate) fn set_vertex(&mut self, i: usize, v: GPoint) {
        self.vertices[i] = v;
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| self.geometry.dist(self.vertices[i], self.vertices[(i + 1) % n]))
            .sum()
    }

    /// Every vertex lies in the closed disk. Disks of admissible radius are
    /// geodesically convex, so the edges follow.
    pub fn contained_in(&self, disk: &Disk) -> bool {
        self.vertices.iter().all(|&v| disk.contains(v))
    }

    /// Simplicity test in the chart about the vertex barycenter.
    pub fn is_simple(&self) -> Result<bool> {
        let center = self.geometry.centroid(&self.vertices)?;
        self.is_simple_about(center)
    }

    /// Simplicity test in the chart about `center`. On S² every vertex must
    /// lie in the open hemisphere about `center`.
    pub fn is_simple_about(&self, center: GPoint) -> Result<bool> {
        if self.has_short_edge() {
            return Ok(false);
        }
        let (_, img) = self.geometry.chart_around(center, &self.vertices)?;
        let n = img.len();
        for i in 0..n {
            for j in i + 1..n {
                if !edge_pair_ok(&img, i, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the polygon stays simple after replacing vertex `k` by `v`,
    /// assuming it is simple now. Only the two edges at `k` are rechecked.
    pub fn is_simple_after_move(&self, k: usize, v: GPoint, center: GPoint) -> Result<bool> {
        let n = self.n();
        let g = self.geometry;
        let prev = (k + n - 1) % n;
        let next = (k + 1) % n;
        if g.dist(v, self.vertices[prev]) <= MODEL_TOL || g.dist(v, self.vertices[next]) <= MODEL_TOL {
            return Ok(false);
        }
        let mut pts = self.vertices.clone();
        pts[k] = v;
        let (_, img) = g.chart_around(center, &pts)?;
        for e in [prev, k] {
            for j in 0..n {
                if j != e && !edge_pair_ok(&img, e.min(j), e.max(j)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn has_short_edge(&self) -> bool {
        let n = self.n();
        (0..n).any(|i| self.geometry.dist(self.vertices[i], self.vertices[(i + 1) % n]) <= MODEL_TOL)
    }

    pub fn to_record(&self, disk: &Disk) -> PolygonRecord {
        PolygonRecord {
            schema_version: SCHEMA_VERSION,
            geometry: self.geometry,
            radius: disk.radius(),
            center: disk.center().coords(),
            n: self.n(),
            vertices: self.vertices.iter().map(GPoint::coords).collect(),
            perimeter: Some(self.perimeter()),
        }
    }
}

/// Edges `i < j` (edge `i` runs from vertex `i` to `i + 1`) meet as a simple
/// polygon requires.
fn edge_pair_ok(img: &[P2], i: usize, j: usize) -> bool {
    let n = img.len();
    let (a0, a1) = (img[i], img[(i + 1) % n]);
    let (b0, b1) = (img[j], img[(j + 1) % n]);
    let hit = classify(a0, a1, b0, b1);
    if j == i + 1 {
        // Shared vertex is a1 = b0.
        matches!(hit, PlanarHit::Point(HitPoint::Endpoint(1 | 2)))
    } else if i == 0 && j == n - 1 {
        // Shared vertex is a0 = b1.
        matches!(hit, PlanarHit::Point(HitPoint::Endpoint(0 | 3)))
    } else {
        hit == PlanarHit::Disjoint
    }
}

/// Serialized polygon, shared by the CLI and the search reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub schema_version: u32,
    pub geometry: Geometry,
    pub radius: f64,
    pub center: [f64; 3],
    pub n: usize,
    pub vertices: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perimeter: Option<f64>,
}

impl PolygonRecord {
    /// Rebuild the polygon and its disk, validating every point.
    pub fn to_polygon(&self) -> Result<(SimplePolygon, Disk)> {
        let g = self.geometry;
        if self.vertices.len() != self.n {
            return Err(Error::domain(format!(
                "record declares n = {} but lists {} vertices",
                self.n,
                self.vertices.len()
            )));
        }
        let disk = Disk::new(g, g.point(self.center)?, self.radius)?;
        let vertices = self.vertices.iter().map(|&c| g.point(c)).collect::<Result<Vec<_>>>()?;
        Ok((SimplePolygon::new(g, vertices)?, disk))
    }
}

fn check_delta(disk: &Disk, n: usize, delta: f64) -> Result<()> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::domain(format!("delta must be positive, got {delta}")));
    }
    let cap = disk.radius() / (2.0 * n as f64);
    if delta >= cap {
        return Err(Error::Construction(format!(
            "delta = {delta} is too large; it must stay below radius/(2n) = {cap}"
        )));
    }
    Ok(())
}

/// Chart length of a geodesic step of length `delta` leaving chart point `u`
/// in chart direction `w` (unit).
fn chart_step(disk: &Disk, u: P2, w: P2, delta: f64) -> Result<f64> {
    let g = disk.geometry();
    let v = [u[0] + delta * w[0], u[1] + delta * w[1]];
    let d = g.dist(disk.from_local_chart(u)?, disk.from_local_chart(v)?);
    Ok(delta * delta / d)
}

fn finish(g: Geometry, disk: &Disk, chart: &[P2]) -> Result<SimplePolygon> {
    let vertices = chart
        .iter()
        .map(|&u| disk.from_local_chart(u))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Construction(e.to_string()))?;
    let poly = SimplePolygon::new(g, vertices)?;
    if !poly.contained_in(disk) {
        return Err(Error::Construction("constructed polygon leaves the disk".into()));
    }
    if !poly.is_simple_about(disk.center())? {
        return Err(Error::Construction("constructed polygon is not simple".into()));
    }
    Ok(poly)
}

/// A simple `n`-gon (odd `n`) close to the optimal isosceles triangle with
/// its base traversed `n - 2` times.
///
/// In the chart about the disk center the apex `m` sits on the boundary and
/// the base runs from `p` to `q`. The polygon visits
/// `m, P1, Q1, P2, Q2, ..., Pk, Qk` with `k = (n - 1) / 2`: the `Q_j` climb
/// straight up from `q` in steps of `delta`, the `P_j` climb from `p` into
/// the triangle in steps of `delta / n`. Both ladders are strictly
/// monotone, so the base edges are pairwise disjoint rungs, all of them lie
/// strictly inside the triangle angle at `p`, and the last leg `Qk m` lies
/// above every rung.
pub fn construct_odd_extremal(disk: &Disk, n: usize, delta: f64) -> Result<SimplePolygon> {
    check_odd(n)?;
    check_delta(disk, n, delta)?;
    let g = disk.geometry();
    let bound = optimal_bound(g, disk.radius(), n)?;
    let rc = disk.chart_radius();
    let on_circle = |angle: f64| [rc * angle.cos(), rc * angle.sin()];
    let half = std::f64::consts::FRAC_PI_2;
    let m = on_circle(half);
    let p = on_circle(half + bound.central_angle_beta);
    let q = on_circle(half - bound.central_angle_beta);
    if n == 3 {
        return finish(g, disk, &[m, p, q]);
    }

    let k = (n - 1) / 2;
    let up = [0.0, 1.0];
    let gq = chart_step(disk, q, up, delta)?;
    let gp = chart_step(disk, p, up, delta / n as f64)?;
    // Direction along the leg p -> m scaled to unit height, plus one unit
    // along the base towards q to move strictly inside the triangle.
    let leg = [m[0] - p[0], m[1] - p[1]];
    let climb = [leg[0] / leg[1] + 1.0, 1.0];

    let mut chart = Vec::with_capacity(n);
    chart.push(m);
    for j in 1..=k {
        let h = (j - 1) as f64 * gp;
        chart.push([p[0] + h * climb[0], p[1] + h * climb[1]]);
        chart.push([q[0], q[1] + j as f64 * gq]);
    }
    finish(g, disk, &chart)
}

/// A simple `n`-gon (even `n`) zig-zagging along a diameter.
///
/// In the chart about the disk center one vertex sits at the boundary point
/// `A` at angle `pi`; the others alternate between boundary points `b_i`
/// clustered around angle `0` and points `a_i` at distance about `delta`
/// from `A`, each `a_i` on the ray from `A` between the rays to `b_{i-1}`
/// and `b_i`. Every zig-zag pair then lives in its own wedge at `A`.
pub fn construct_even_zigzag(disk: &Disk, n: usize, delta: f64) -> Result<SimplePolygon> {
    check_even(n)?;
    check_delta(disk, n, delta)?;
    let g = disk.geometry();
    let rc = disk.chart_radius();
    let k = n / 2;
    let a = [-rc, 0.0];
    let s = chart_step(disk, a, [1.0, 0.0], delta)?;
    // Angular gap between neighbouring b_i. Chords from A lose only the
    // square of their angle, so a gap of order sqrt(delta) still costs O(delta)
    // while keeping each a_i well clear of the wedge rays.
    let spread = (delta / disk.radius()).sqrt() / k as f64;
    let theta = |i: f64| (i - (k as f64 + 1.0) / 2.0) * spread;
    let boundary = |angle: f64| [rc * angle.cos(), rc * angle.sin()];

    let mut chart = Vec::with_capacity(n);
    chart.push(a);
    chart.push(boundary(theta(1.0)));
    for i in 2..=k {
        let target = boundary(theta(i as f64 - 0.5));
        let d = [target[0] - a[0], target[1] - a[1]];
        let len = d[0].hypot(d[1]);
        chart.push([a[0] + s * d[0] / len, a[1] + s * d[1] / len]);
        chart.push(boundary(theta(i as f64)));
    }
    finish(g, disk, &chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound::even_n_supremum;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn regular(disk: &Disk, n: usize) -> SimplePolygon {
        let v = (0..n).map(|i| disk.boundary_point(TAU * i as f64 / n as f64)).collect();
        SimplePolygon::new(disk.geometry(), v).unwrap()
    }

    fn e2(pts: &[[f64; 2]]) -> SimplePolygon {
        let g = Geometry::Euclidean;
        SimplePolygon::new(g, pts.iter().map(|&[x, y]| g.point([x, y, 1.0]).unwrap()).collect()).unwrap()
    }

    #[test]
    fn convex_pentagon_is_simple() {
        for g in Geometry::ALL {
            let disk = Disk::centered(g, 0.8).unwrap();
            assert!(regular(&disk, 5).is_simple().unwrap(), "{g}");
        }
    }

    #[test]
    fn bowtie_is_not_simple() {
        let p = e2(&[[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(!p.is_simple().unwrap());
    }

    #[test]
    fn vertex_on_nonincident_edge_is_not_simple() {
        // Vertex 3 touches the interior of edge 0-1.
        let p = e2(&[[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(!p.is_simple().unwrap());
    }

    #[test]
    fn zero_length_edge_and_foldback_are_rejected() {
        let p = e2(&[[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(!p.is_simple().unwrap());
        let q = e2(&[[0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert!(!q.is_simple().unwrap());
    }

    #[test]
    fn perimeter_examples() {
        let disk = Disk::centered(Geometry::Euclidean, 1.0).unwrap();
        assert!((regular(&disk, 3).perimeter() - 3.0 * 3f64.sqrt()).abs() < 1e-12);
        let sq = e2(&[[0.0, 0.0], [0.5, 0.0], [0.5, 0.5], [0.0, 0.5]]);
        assert!((sq.perimeter() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn containment_examples() {
        let disk = Disk::centered(Geometry::Euclidean, 1.0).unwrap();
        assert!(regular(&disk, 3).contained_in(&disk));
        let out = e2(&[[1.001, 0.0], [0.0, 0.5], [-0.5, -0.5]]);
        assert!(!out.contained_in(&disk));

        let h = Disk::centered(Geometry::Hyperbolic, 1.0).unwrap();
        let v = (0..5).map(|i| h.point_at_polar(0.999_999, TAU * i as f64 / 5.0)).collect();
        assert!(SimplePolygon::new(Geometry::Hyperbolic, v).unwrap().contained_in(&h));
    }

    #[test]
    fn odd_triangle_is_the_bound() {
        for g in Geometry::ALL {
            let disk = Disk::centered(g, 0.7).unwrap();
            let p = construct_odd_extremal(&disk, 3, 1e-3).unwrap();
            let b = optimal_bound(g, 0.7, 3).unwrap().value;
            assert!((p.perimeter() - b).abs() < 1e-12, "{g}");
        }
    }

    #[test]
    fn odd_construction_examples() {
        let cases = [(Geometry::Euclidean, 1.0, 5, 1e-4), (Geometry::Spherical, 0.2, 7, 1e-4)];
        for (g, r, n, tol) in cases {
            let disk = Disk::centered(g, r).unwrap();
            let p = construct_odd_extremal(&disk, n, 1e-6).unwrap();
            let b = optimal_bound(g, r, n).unwrap().value;
            assert!(p.is_simple().unwrap() && p.contained_in(&disk));
            let per = p.perimeter();
            assert!(per <= b + 1e-9 && per >= b - tol, "{g} {per} vs {b}");
        }
    }

    #[test]
    fn constructions_work_off_center() {
        for g in Geometry::ALL {
            let c = g.exp_origin(0.3, -0.2);
            let disk = Disk::new(g, c, 0.5).unwrap();
            let p = construct_odd_extremal(&disk, 9, 1e-6).unwrap();
            assert!(p.contained_in(&disk));
            let b = optimal_bound(g, 0.5, 9).unwrap().value;
            assert!((p.perimeter() - b).abs() < 1e-4);
            let z = construct_even_zigzag(&disk, 8, 1e-6).unwrap();
            assert!(z.contained_in(&disk));
            assert!((z.perimeter() - 8.0).abs() < 1e-4);
        }
    }

    #[test]
    fn even_zigzag_examples() {
        let e = Disk::centered(Geometry::Euclidean, 1.0).unwrap();
        let p = construct_even_zigzag(&e, 4, 1e-5).unwrap();
        assert!(p.perimeter() >= 8.0 - 1e-3 && p.perimeter() <= 8.0);

        let h = Disk::centered(Geometry::Hyperbolic, 1.0).unwrap();
        let p = construct_even_zigzag(&h, 4, 1e-6).unwrap();
        assert!(p.perimeter() >= 8.0 - 1e-4 && p.perimeter() <= 8.0 + 1e-9);
    }

    #[test]
    fn even_deficit_is_linear_in_delta() {
        let e = Disk::centered(Geometry::Euclidean, 1.0).unwrap();
        let sup = even_n_supremum(Geometry::Euclidean, 1.0, 6).unwrap();
        let d1 = sup - construct_even_zigzag(&e, 6, 1e-4).unwrap().perimeter();
        let d2 = sup - construct_even_zigzag(&e, 6, 5e-5).unwrap().perimeter();
        let ratio = d1 / d2;
        assert!((ratio - 2.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn delta_too_large_is_a_construction_error() {
        let disk = Disk::centered(Geometry::Euclidean, 1.0).unwrap();
        assert!(matches!(construct_odd_extremal(&disk, 5, 0.2), Err(Error::Construction(_))));
        assert!(matches!(construct_even_zigzag(&disk, 4, 0.2), Err(Error::Construction(_))));
        assert!(matches!(construct_odd_extremal(&disk, 4, 1e-3), Err(Error::Usage(_))));
    }

    #[test]
    fn record_round_trip() {
        let disk = Disk::centered(Geometry::Spherical, 0.4).unwrap();
        let p = construct_odd_extremal(&disk, 5, 1e-4).unwrap();
        let json = serde_json::to_string(&p.to_record(&disk)).unwrap();
        let back: PolygonRecord = serde_json::from_str(&json).unwrap();
        let (q, d) = back.to_polygon().unwrap();
        assert_eq!(d.radius(), 0.4);
        assert!((q.perimeter() - p.perimeter()).abs() < 1e-12);
    }

    #[test]
    fn incremental_check_matches_full_check() {
        let disk = Disk::centered(Geometry::Euclidean, 1.0).unwrap();
        let base = regular(&disk, 6);
        let g = Geometry::Euclidean;
        for (k, target) in [(0, [-0.9, 0.0]), (2, [0.1, 0.0]), (3, [0.0, 0.0])] {
            let v = g.point([target[0], target[1], 1.0]).unwrap();
            let mut moved = base.clone();
            moved.set_vertex(k, v);
            assert_eq!(
                base.is_simple_after_move(k, v, disk.center()).unwrap(),
                moved.is_simple_about(disk.center()).unwrap()
            );
        }
    }

    #[test]
    fn spherical_large_radius_construction() {
        let r = FRAC_PI_2 - 0.1;
        let disk = Disk::centered(Geometry::Spherical, r).unwrap();
        let p = construct_odd_extremal(&disk, 5, 1e-6).unwrap();
        let b = optimal_bound(Geometry::Spherical, r, 5).unwrap().value;
        assert!(p.perimeter() <= b + 1e-9 && p.perimeter() > b - 1e-3);
        assert!(p.perimeter() < 5.0 * PI);
    }
}
