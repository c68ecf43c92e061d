//! The chain-lengthening move behind the odd-`n` bound, and the spherical
//! configuration where no such move exists.
//!
//! Given `p, q` in a disk `C` with `delta = dist(p, q)` and a short chain
//! `a, b, c` that is monotone along `L(p, q)` and does not cross `(p, q)`,
//! [`lemma_move`] finds `a', b', c'` in `C` with a chain at least as long and
//! `dist(a', c') >= delta`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bound::{golden_section_max, max_inscribed_triangle_perimeter};
use crate::error::{Error, Result};
use crate::geometry::{Disk, GPoint, GSegment, GeodesicLine, Geometry, Intersection, MODEL_TOL};
use crate::order::{ProjectionOrderContext, ORDER_TOL};

/// Slack on every conclusion check.
pub const LEMMA_TOL: f64 = 1e-9;

/// Boundary points added to the candidate pool when the case-specific moves
/// all fail.
const BOUNDARY_SAMPLES: usize = 96;

/// A point configuration for the chain-lengthening move.
#[derive(Debug, Clone, Copy)]
pub struct LemmaInstance {
    pub octx: ProjectionOrderContext,
    pub a: GPoint,
    pub b: GPoint,
    pub c: GPoint,
    pub delta: f64,
}

/// Which move produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// The chain already satisfies the conclusion.
    Keep,
    /// `[a,b]` reaches past `q`: use `(p, b, c)`.
    SnapAToP,
    /// `[b,c]` reaches past `p`: use `(a, b, q)`.
    SnapCToQ,
    /// Replace the far end by the boundary point opposite `b`.
    SnapToAntipode,
    /// Replace the far end by where `L(p,q)` leaves the disk.
    SnapToLineExit,
    /// Move `b` to the boundary at its own projection level.
    MoveBToBoundary,
    /// Chain `(p, y, q)` over a boundary or chain point `y`.
    Apex,
    /// `(p, a, q)`, justified by reflecting across the bisector of `[a,b]`.
    Reflection,
    /// Moves built from where `L(a,b)`, its perpendicular at `a` and the
    /// bisector of `[a,b]` meet the boundary.
    HyperbolicArc,
    /// Best pair from the full candidate pool.
    BoundarySearch,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MoveResult {
    pub a: GPoint,
    pub b: GPoint,
    pub c: GPoint,
    pub old_chain_length: f64,
    pub new_chain_length: f64,
    pub case_tag: CaseTag,
}

/// A failed move, with the whole instance for triage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaViolation {
    pub geometry: Geometry,
    pub center: [f64; 3],
    pub radius: f64,
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: [f64; 3],
    pub delta: f64,
    pub old_chain_length: f64,
    pub reason: String,
}

pub fn chain_length(g: Geometry, a: GPoint, b: GPoint, c: GPoint) -> f64 {
    g.dist(a, b) + g.dist(b, c)
}

impl LemmaInstance {
    pub fn new(octx: ProjectionOrderContext, a: GPoint, b: GPoint, c: GPoint) -> Self {
        let g = octx.geometry();
        let delta = g.dist(octx.p(), octx.q());
        LemmaInstance { octx, a, b, c, delta }
    }

    pub fn geometry(&self) -> Geometry {
        self.octx.geometry()
    }

    pub fn chain_length(&self) -> f64 {
        chain_length(self.geometry(), self.a, self.b, self.c)
    }

    /// Containment, `a ≤ b ≤ c`, no crossing with `(p, q)`, and both links
    /// no longer than `delta`.
    pub fn check_hypotheses(&self) -> Result<bool> {
        let g = self.geometry();
        let disk = self.octx.disk();
        if ![self.a, self.b, self.c].iter().all(|&x| disk.contains(x)) {
            return Ok(false);
        }
        if g.dist(self.a, self.b) > self.delta + LEMMA_TOL || g.dist(self.b, self.c) > self.delta + LEMMA_TOL {
            return Ok(false);
        }
        if !self.octx.le(self.a, self.b)? || !self.octx.le(self.b, self.c)? {
            return Ok(false);
        }
        Ok(!self.octx.chain_crosses(self.a, self.b, self.c)?)
    }

    /// Whether the chain meets the open segment `(p, q)` at all. The
    /// hypotheses allow a single meeting point; a chain that comes from a
    /// simple polygon with `[p, q]` as an edge never meets it.
    pub fn meets_open_segment(&self) -> Result<bool> {
        let octx = &self.octx;
        let g = self.geometry();
        let (sp, sq) = (octx.coordinate(octx.p())?, octx.coordinate(octx.q())?);
        let pq = GSegment::new(g, octx.p(), octx.q())?;
        for (u, v) in [(self.a, self.b), (self.b, self.c)] {
            let coords = if g.dist(u, v) <= MODEL_TOL {
                if octx.line().side(u).abs() <= 1e-12 {
                    vec![octx.coordinate(u)?]
                } else {
                    Vec::new()
                }
            } else {
                let link = GSegment::new(g, u, v)?;
                match g.segments_intersect_within(&pq, &link, Some(octx.chart_center()))? {
                    Intersection::Disjoint => Vec::new(),
                    Intersection::Point(x) => vec![octx.coordinate(x)?],
                    Intersection::Overlap(s) => vec![octx.coordinate(s.a())?, octx.coordinate(s.b())?],
                }
            };
            if coords.iter().any(|&s| s > sp + ORDER_TOL && s < sq - ORDER_TOL) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn violation(&self, reason: impl Into<String>) -> LemmaViolation {
        let disk = self.octx.disk();
        LemmaViolation {
            geometry: self.geometry(),
            center: disk.center().coords(),
            radius: disk.radius(),
            p: self.octx.p().coords(),
            q: self.octx.q().coords(),
            a: self.a.coords(),
            b: self.b.coords(),
            c: self.c.coords(),
            delta: self.delta,
            old_chain_length: self.chain_length(),
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Copy)]
struct Candidate {
    a: GPoint,
    b: GPoint,
    c: GPoint,
    tag: CaseTag,
}

fn cand(a: GPoint, b: GPoint, c: GPoint, tag: CaseTag) -> Candidate {
    Candidate { a, b, c, tag }
}

/// Geometry shared by the candidate generators.
struct Scene<'a> {
    inst: &'a LemmaInstance,
    g: Geometry,
    disk: &'a Disk,
    line: &'a GeodesicLine,
    s_p: f64,
    s_q: f64,
    /// Boundary exits of `L(p,q)` beyond `p` and beyond `q`.
    exit_p: GPoint,
    exit_q: GPoint,
}

impl<'a> Scene<'a> {
    fn new(inst: &'a LemmaInstance) -> Result<Self> {
        let octx = &inst.octx;
        let line = octx.line();
        let disk = octx.disk();
        let (lo, hi) = line
            .disk_crossings(disk)
            .ok_or_else(|| Error::Internal("L(p,q) misses the disk".into()))?;
        Ok(Scene {
            inst,
            g: octx.geometry(),
            disk,
            line,
            s_p: octx.coordinate(octx.p())?,
            s_q: octx.coordinate(octx.q())?,
            exit_p: line.point_at(lo),
            exit_q: line.point_at(hi),
        })
    }

    /// Coordinates along `L(p,q)` of the points where `[u, v]` meets it.
    fn hits(&self, u: GPoint, v: GPoint) -> Result<Vec<f64>> {
        let octx = &self.inst.octx;
        if self.g.dist(u, v) <= MODEL_TOL {
            return Ok(if self.line.side(u).abs() <= 1e-12 {
                vec![octx.coordinate(u)?]
            } else {
                Vec::new()
            });
        }
        let seg = GSegment::new(self.g, u, v)?;
        let chord = GSegment::new(self.g, self.exit_p, self.exit_q)?;
        Ok(match self.g.segments_intersect_within(&seg, &chord, Some(octx.chart_center()))? {
            Intersection::Disjoint => Vec::new(),
            Intersection::Point(x) => vec![octx.coordinate(x)?],
            Intersection::Overlap(s) => vec![octx.coordinate(s.a())?, octx.coordinate(s.b())?],
        })
    }

    fn meets_beyond_q(&self, u: GPoint, v: GPoint) -> Result<bool> {
        Ok(self.hits(u, v)?.iter().any(|&s| s >= self.s_q - ORDER_TOL))
    }

    fn meets_beyond_p(&self, u: GPoint, v: GPoint) -> Result<bool> {
        Ok(self.hits(u, v)?.iter().any(|&s| s <= self.s_p + ORDER_TOL))
    }

    /// Boundary point on the ray from `x` through the center.
    fn antipode(&self, x: GPoint) -> GPoint {
        self.disk.boundary_point(self.disk.angle_of(x) + PI)
    }

    /// Boundary points on the perpendicular to `L(p,q)` through the
    /// projection of `x`.
    fn level_points(&self, x: GPoint) -> Result<Vec<GPoint>> {
        let s = self.inst.octx.coordinate(x)?;
        Ok(boundary_hits(&self.line.perpendicular_at(s), self.disk))
    }

    /// Boundary points on the perpendicular bisector of `[p, q]`.
    fn bisector_points(&self) -> Vec<GPoint> {
        boundary_hits(&self.line.perpendicular_at(0.5 * (self.s_p + self.s_q)), self.disk)
    }

    /// Boundary point maximizing `dist(p, y) + dist(y, q)`.
    fn best_apex(&self) -> GPoint {
        let (p, q) = (self.inst.octx.p(), self.inst.octx.q());
        let f = |t: f64| {
            let y = self.disk.boundary_point(t);
            self.g.dist(p, y) + self.g.dist(y, q)
        };
        let step = TAU / 256.0;
        let best = (0..256)
            .map(|i| (i, f(i as f64 * step)))
            .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
        let t0 = best.0 as f64 * step;
        let t = golden_section_max(f, t0 - step, t0 + step, 1e-12);
        self.disk.boundary_point(t)
    }

    /// Boundary points built from `[a, b]`: the ends of `L(a,b)` in the disk,
    /// their reflections through the center, the ends of the perpendicular
    /// at `a` and of the bisector of `[a, b]`.
    fn segment_points(&self) -> Vec<GPoint> {
        let (a, b) = (self.inst.a, self.inst.b);
        let Ok(lab) = GeodesicLine::through(self.g, a, b) else {
            return Vec::new();
        };
        let ends = boundary_hits(&lab, self.disk);
        let mut out: Vec<GPoint> = ends.iter().map(|&r| self.antipode(r)).collect();
        out.extend(ends);
        out.extend(boundary_hits(&lab.perpendicular_at(0.0), self.disk));
        out.extend(boundary_hits(&lab.perpendicular_at(0.5 * self.g.dist(a, b)), self.disk));
        out
    }
}

/// Where `line` meets the boundary circle, snapped onto the circle so that
/// round-off in the crossing parameters cannot push them outside the disk.
fn boundary_hits(line: &GeodesicLine, disk: &Disk) -> Vec<GPoint> {
    match line.disk_crossings(disk) {
        Some((lo, hi)) => [lo, hi]
            .map(|s| disk.boundary_point(disk.angle_of(line.point_at(s))))
            .to_vec(),
        None => Vec::new(),
    }
}

/// Candidates for the case of the proof that applies to `inst`.
fn case_candidates(sc: &Scene) -> Result<Vec<Candidate>> {
    let inst = sc.inst;
    let (p, q) = (inst.octx.p(), inst.octx.q());
    let (a, b, c) = (inst.a, inst.b, inst.c);
    use CaseTag::*;

    if sc.meets_beyond_q(a, b)? {
        return Ok(vec![cand(p, b, c, SnapAToP)]);
    }
    if sc.meets_beyond_p(b, c)? {
        return Ok(vec![cand(a, b, q, SnapCToQ)]);
    }
    let ab_p = sc.meets_beyond_p(a, b)?;
    let bc_q = sc.meets_beyond_q(b, c)?;
    if ab_p && bc_q {
        return Ok(vec![cand(a, b, c, Keep)]);
    }
    if ab_p {
        let mut out = vec![
            cand(a, b, sc.antipode(b), SnapToAntipode),
            cand(a, b, sc.exit_q, SnapToLineExit),
        ];
        for x in sc.level_points(b)? {
            out.push(cand(a, x, sc.exit_q, MoveBToBoundary));
        }
        return Ok(out);
    }
    if bc_q {
        let mut out = vec![
            cand(sc.antipode(b), b, c, SnapToAntipode),
            cand(sc.exit_p, b, c, SnapToLineExit),
        ];
        for x in sc.level_points(b)? {
            out.push(cand(sc.exit_p, x, c, MoveBToBoundary));
        }
        return Ok(out);
    }

    // No link reaches past p or q.
    let mut out = vec![cand(a, b, c, Keep), cand(p, a, q, Reflection)];
    let mut apexes = vec![b, c, sc.best_apex()];
    apexes.extend(sc.bisector_points());
    apexes.extend(sc.level_points(b)?);
    for y in apexes {
        out.push(cand(p, y, q, Apex));
    }
    let t_c = sc.g.reflect_across_bisector(a, b, c);
    out.push(cand(b, a, t_c, Reflection));
    if sc.g == Geometry::Hyperbolic {
        for y in sc.segment_points() {
            out.push(cand(p, y, q, HyperbolicArc));
            out.push(cand(a, b, y, HyperbolicArc));
            out.push(cand(b, a, y, HyperbolicArc));
        }
    }
    Ok(out)
}

/// Best chain over the full candidate pool.
fn pool_search(sc: &Scene) -> Result<Option<Candidate>> {
    let inst = sc.inst;
    let g = sc.g;
    let (p, q) = (inst.octx.p(), inst.octx.q());
    let (a, b, c) = (inst.a, inst.b, inst.c);
    let mut pool = vec![a, b, c, p, q, sc.exit_p, sc.exit_q, sc.antipode(b), sc.best_apex()];
    pool.extend(sc.bisector_points());
    pool.extend(sc.level_points(b)?);
    pool.extend(sc.segment_points());
    pool.push(g.reflect_across_bisector(a, b, c));
    let ring: Vec<GPoint> =
        (0..BOUNDARY_SAMPLES).map(|i| sc.disk.boundary_point(TAU * i as f64 / BOUNDARY_SAMPLES as f64)).collect();
    pool.extend(&ring);
    pool.retain(|&x| sc.disk.contains(x));

    let mut middles = vec![b, a, c, sc.best_apex()];
    middles.extend(sc.level_points(b)?);
    middles.extend(ring);
    middles.retain(|&x| sc.disk.contains(x));

    let need = inst.delta - LEMMA_TOL;
    let mut best: Option<(f64, Candidate)> = None;
    for &m in &middles {
        let mut f: Vec<(f64, GPoint)> = pool.iter().map(|&x| (g.dist(x, m), x)).collect();
        f.sort_by(|u, v| v.0.total_cmp(&u.0));
        let top = f[0].0;
        for (i, &(fi, xi)) in f.iter().enumerate() {
            let floor = best.map_or(f64::NEG_INFINITY, |b| b.0);
            if fi + top <= floor {
                break;
            }
            for (j, &(fj, xj)) in f.iter().enumerate() {
                if fi + fj <= best.map_or(f64::NEG_INFINITY, |b| b.0) {
                    break;
                }
                if i != j && g.dist(xi, xj) >= need {
                    best = Some((fi + fj, cand(xi, m, xj, CaseTag::BoundarySearch)));
                    break;
                }
            }
        }
    }
    Ok(best.map(|b| b.1))
}

fn pick(inst: &LemmaInstance, cands: &[Candidate], old: f64) -> Option<MoveResult> {
    let g = inst.geometry();
    let disk = inst.octx.disk();
    let mut best: Option<MoveResult> = None;
    for k in cands {
        if ![k.a, k.b, k.c].iter().all(|&x| disk.contains(x)) {
            continue;
        }
        if g.dist(k.a, k.c) < inst.delta - LEMMA_TOL {
            continue;
        }
        let new = chain_length(g, k.a, k.b, k.c);
        if new < old - LEMMA_TOL {
            continue;
        }
        if best.is_none_or(|b| new > b.new_chain_length) {
            best = Some(MoveResult {
                a: k.a,
                b: k.b,
                c: k.c,
                old_chain_length: old,
                new_chain_length: new,
                case_tag: k.tag,
            });
        }
    }
    best
}

/// Lengthen the chain so that its ends are at least `delta` apart.
///
/// The candidate moves of the case that applies are tried first and the
/// longest feasible one wins (earlier candidates win ties). If none is
/// feasible the search widens to a pool of special and sampled boundary
/// points. A chain whose length plus `delta` exceeds the largest triangle
/// perimeter in the disk can never be moved and is rejected up front.
pub fn lemma_move(inst: &LemmaInstance) -> Result<MoveResult> {
    let g = inst.geometry();
    let old = inst.chain_length();
    let disk = inst.octx.disk();
    let triangle_max = max_inscribed_triangle_perimeter(g, disk.radius())?;
    if old + inst.delta > triangle_max + LEMMA_TOL {
        return Err(Error::LemmaViolation(Box::new(inst.violation(format!(
            "chain length {old} plus delta {} exceeds the largest triangle perimeter {triangle_max}",
            inst.delta
        )))));
    }
    let sc = Scene::new(inst)?;
    if let Some(m) = pick(inst, &case_candidates(&sc)?, old) {
        return Ok(m);
    }
    if let Some(k) = pool_search(&sc)? {
        if let Some(m) = pick(inst, &[k], old) {
            return Ok(m);
        }
    }
    Err(Error::LemmaViolation(Box::new(
        inst.violation("no feasible candidate keeps the chain length"),
    )))
}

/// The spherical configuration where the move cannot exist.
///
/// `dist(p, q) = pi - epsilon`; `[a, b]` has the same length, is
/// perpendicular to `[p, q]` and has `q` as its midpoint; `c = a`. The disk
/// is centred on `L(p, q)` where it minimizes the largest distance to the
/// four points, and its radius adds a margin of at most `1e-6`.
pub fn spherical_counterexample(epsilon: f64) -> Result<LemmaInstance> {
    if !(epsilon > 0.0 && epsilon < 0.1) {
        return Err(Error::usage(format!("epsilon must lie in (0, 0.1), got {epsilon}")));
    }
    let g = Geometry::Spherical;
    let q = g.point([1.0, 0.0, 0.0])?;
    let p = g.point([-epsilon.cos(), epsilon.sin(), 0.0])?;
    let h = (PI - epsilon) / 2.0;
    let a = g.point([h.cos(), 0.0, -h.sin()])?;
    let b = g.point([h.cos(), 0.0, h.sin()])?;

    let on_equator = |psi: f64| GPoint([psi.cos(), psi.sin(), 0.0]);
    let spread = |psi: f64| {
        let m = on_equator(psi);
        [p, q, a, b].iter().map(|&x| g.dist(m, x)).fold(0.0, f64::max)
    };
    let psi = golden_section_max(|t| -spread(t), 0.0, PI - epsilon, 1e-13);
    let reach = spread(psi);
    if reach >= FRAC_PI_2 {
        return Err(Error::Internal("configuration does not fit in an open hemisphere".into()));
    }
    let radius = reach + (1e-6f64).min((FRAC_PI_2 - reach) / 2.0);
    let disk = Disk::new(g, on_equator(psi), radius)?;
    let octx = ProjectionOrderContext::new(g, p, q, disk)?;
    let inst = LemmaInstance::new(octx, a, b, a);
    if !inst.check_hypotheses()? {
        return Err(Error::Internal("counterexample fails the hypotheses".into()));
    }
    if (inst.chain_length() - 2.0 * (PI - epsilon)).abs() > LEMMA_TOL {
        return Err(Error::Internal("counterexample chain has the wrong length".into()));
    }
    Ok(inst)
}

/// Draw `p, q, a, b, c` uniformly from the disk until the hypotheses hold.
pub fn sample_instance<R: rand::Rng + ?Sized>(disk: &Disk, rng: &mut R, max_tries: usize) -> Result<(Option<LemmaInstance>, usize)> {
    let g = disk.geometry();
    for attempt in 1..=max_tries {
        let p = disk.sample_uniform(rng);
        let q = disk.sample_uniform(rng);
        let [a, b, c] = [0; 3].map(|_| disk.sample_uniform(rng));
        let delta = g.dist(p, q);
        if delta <= 1e-9 || g.dist(a, b) > delta || g.dist(b, c) > delta {
            continue;
        }
        let octx = ProjectionOrderContext::new(g, p, q, *disk)?;
        let inst = LemmaInstance::new(octx, a, b, c);
        // Above pi/4 on the sphere some draws fall outside the hemisphere
        // where the order is defined; those are not instances at all.
        match inst.check_hypotheses() {
            Ok(true) => return Ok((Some(inst), attempt)),
            Ok(false) | Err(Error::Domain(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((None, max_tries))
}

/// Outcome of running the move on many sampled instances.
#[derive(Debug, Clone, Serialize)]
pub struct MassReport {
    pub geometry: Geometry,
    pub radius: f64,
    pub seed: u64,
    pub trials: usize,
    pub attempts: usize,
    pub acceptance_rate: f64,
    pub failures: usize,
    /// Failures whose chain meets the open segment `(p, q)`.
    pub failures_meeting_pq: usize,
    /// Moves whose new chain equals the old one within tolerance.
    pub tight: usize,
    /// Whether the disk is in the range where the move is guaranteed.
    pub theorem_regime: bool,
    /// Up to ten failing instances.
    pub examples: Vec<LemmaViolation>,
}

/// Run [`lemma_move`] on `trials` sampled instances. Instance `i` draws from
/// its own ChaCha stream, so results do not depend on thread scheduling.
pub fn verify_random_instances(disk: &Disk, trials: usize, seed: u64) -> Result<MassReport> {
    if trials == 0 {
        return Err(Error::usage("trials must be positive"));
    }
    const MAX_TRIES: usize = 1_000_000;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let (inst, tries) = sample_instance(disk, &mut rng, MAX_TRIES)?;
            let inst = inst.ok_or_else(|| Error::Internal("no valid instance within the sampling budget".into()))?;
            let outcome = lemma_move(&inst);
            let meets = match outcome {
                Ok(_) => false,
                Err(_) => inst.meets_open_segment()?,
            };
            Ok((tries, outcome, meets))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut attempts = 0;
    let mut failures = 0;
    let mut failures_meeting_pq = 0;
    let mut tight = 0;
    let mut examples = Vec::new();
    for (tries, outcome, meets) in outcomes {
        attempts += tries;
        match outcome {
            Ok(m) => {
                if (m.new_chain_length - m.old_chain_length).abs() <= LEMMA_TOL {
                    tight += 1;
                }
            }
            Err(Error::LemmaViolation(v)) => {
                failures += 1;
                failures_meeting_pq += meets as usize;
                if examples.len() < 10 {
                    examples.push(*v);
                }
            }
            Err(e) => return Err(e),
        }
    }
    let g = disk.geometry();
    Ok(MassReport {
        geometry: g,
        radius: disk.radius(),
        seed,
        trials,
        attempts,
        acceptance_rate: trials as f64 / attempts as f64,
        failures,
        failures_meeting_pq,
        tight,
        theorem_regime: g != Geometry::Spherical || disk.radius() <= std::f64::consts::FRAC_PI_4,
        examples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2(x: f64, y: f64) -> GPoint {
        Geometry::Euclidean.point([x, y, 1.0]).unwrap()
    }

    fn unit_ctx(p: GPoint, q: GPoint) -> ProjectionOrderContext {
        let disk = Disk::centered(Geometry::Euclidean, 1.0).unwrap();
        ProjectionOrderContext::new(Geometry::Euclidean, p, q, disk).unwrap()
    }

    #[test]
    fn monotone_chain_satisfies_hypotheses() {
        let ctx = unit_ctx(e2(-1.0, 0.0), e2(1.0, 0.0));
        let inst = LemmaInstance::new(ctx, e2(-0.5, 0.3), e2(0.0, 0.4), e2(0.5, 0.3));
        assert!(inst.check_hypotheses().unwrap());
        let m = lemma_move(&inst).unwrap();
        assert!(m.new_chain_length >= m.old_chain_length - LEMMA_TOL);
        assert!(Geometry::Euclidean.dist(m.a, m.c) >= inst.delta - LEMMA_TOL);
    }

    #[test]
    fn misordered_chain_fails_hypotheses() {
        let ctx = unit_ctx(e2(-1.0, 0.0), e2(1.0, 0.0));
        let inst = LemmaInstance::new(ctx, e2(-0.5, 0.3), e2(0.0, 0.4), e2(-0.2, 0.3));
        assert!(!inst.check_hypotheses().unwrap());
    }

    #[test]
    fn crossing_chain_fails_hypotheses() {
        let ctx = unit_ctx(e2(-1.0, 0.0), e2(1.0, 0.0));
        let inst = LemmaInstance::new(ctx, e2(-0.5, 0.3), e2(0.0, -0.4), e2(0.5, 0.3));
        assert!(!inst.check_hypotheses().unwrap());
    }

    #[test]
    fn link_beyond_q_snaps_a_to_p() {
        let (p, q) = (e2(-0.5, 0.0), e2(0.5, 0.0));
        let ctx = unit_ctx(p, q);
        let inst = LemmaInstance::new(ctx, e2(0.6, -0.2), e2(0.7, 0.2), e2(0.8, 0.3));
        assert!(inst.check_hypotheses().unwrap());
        let m = lemma_move(&inst).unwrap();
        assert_eq!(m.case_tag, CaseTag::SnapAToP);
        assert_eq!(m.a, p);
        assert!(m.new_chain_length >= m.old_chain_length);
    }

    #[test]
    fn degenerate_chain_on_the_midline() {
        let ctx = unit_ctx(e2(-0.5, 0.0), e2(0.5, 0.0));
        let x = e2(0.0, 0.3);
        let inst = LemmaInstance::new(ctx, x, x, x);
        assert!(inst.check_hypotheses().unwrap());
        let m = lemma_move(&inst).unwrap();
        assert_eq!(m.old_chain_length, 0.0);
        assert!(Geometry::Euclidean.dist(m.a, m.c) >= inst.delta - LEMMA_TOL);
    }

    #[test]
    fn counterexample_properties() {
        for eps in [0.01, 0.05] {
            let inst = spherical_counterexample(eps).unwrap();
            assert!(inst.check_hypotheses().unwrap());
            assert!(inst.octx.le(inst.a, inst.b).unwrap() && inst.octx.le(inst.b, inst.c).unwrap());
            let r = inst.octx.disk().radius();
            assert!(r < FRAC_PI_2);
            let tri = max_inscribed_triangle_perimeter(Geometry::Spherical, r).unwrap();
            let margin = 3.0 * PI - 3.0 * eps - tri;
            assert!(margin > 0.0);
            if eps == 0.01 {
                assert!(margin >= 3.0, "margin {margin}");
            }
            assert!(matches!(lemma_move(&inst), Err(Error::LemmaViolation(_))));
        }
        assert!(matches!(spherical_counterexample(0.5), Err(Error::Usage(_))));
    }

    #[test]
    fn violation_serializes() {
        let inst = spherical_counterexample(0.01).unwrap();
        let Err(Error::LemmaViolation(v)) = lemma_move(&inst) else {
            panic!("expected a violation");
        };
        let json = serde_json::to_value(&*v).unwrap();
        assert_eq!(json["geometry"], "s2");
        assert!(json["reason"].as_str().unwrap().contains("triangle"));
    }

    #[test]
    fn small_mass_runs_are_clean_and_deterministic() {
        for (g, r) in [(Geometry::Euclidean, 1.0), (Geometry::Hyperbolic, 1.0), (Geometry::Spherical, 0.25)] {
            let disk = Disk::centered(g, r).unwrap();
            let rep = verify_random_instances(&disk, 300, 7).unwrap();
            assert_eq!(rep.failures, 0, "{g}: {:?}", rep.examples.first());
            let again = verify_random_instances(&disk, 300, 7).unwrap();
            assert_eq!(rep.attempts, again.attempts);
        }
    }
}
