//! Randomized hill climbing over simple polygons in a disk.
//!
//! The climber only ever accepts strictly longer, still simple and still
//! contained polygons, so every accepted state is a candidate
//! counterexample to the perimeter bound. Finding one is reported as an
//! error.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bound::supremum;
use crate::error::{Error, Result};
use crate::geometry::{Disk, Geometry, Isometry};
use crate::polygon::{construct_even_zigzag, construct_odd_extremal, PolygonRecord, SimplePolygon, SCHEMA_VERSION};

/// Slack allowed above the bound before a polygon counts as a counterexample.
pub const BOUND_TOL: f64 = 1e-9;

/// Consecutive rejections after which the step shrinks.
pub const REJECTION_STREAK: usize = 20;

/// Accepted moves between full re-validations.
pub const REVALIDATE_EVERY: usize = 100;

const RANDOM_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub geometry: Geometry,
    pub radius: f64,
    pub n: usize,
    pub restarts: usize,
    pub steps_per_restart: usize,
    pub initial_step: f64,
    pub cooling: f64,
    pub seed: u64,
}

impl SearchConfig {
    /// Defaults for everything but the problem itself.
    pub fn new(geometry: Geometry, radius: f64, n: usize) -> Self {
        SearchConfig {
            geometry,
            radius,
            n,
            restarts: 16,
            steps_per_restart: 1000,
            initial_step: 0.1 * radius,
            cooling: 0.5,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate_radius(self.radius)?;
        if self.n < 3 {
            return Err(Error::usage(format!("n must be at least 3, got {}", self.n)));
        }
        if self.restarts == 0 || self.steps_per_restart == 0 {
            return Err(Error::usage("restarts and steps must be positive"));
        }
        if !(self.initial_step > 0.0 && self.initial_step < self.radius) {
            return Err(Error::usage(format!(
                "initial step must lie in (0, radius), got {}",
                self.initial_step
            )));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::usage(format!("cooling must lie in (0, 1), got {}", self.cooling)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub geometry: Geometry,
    pub radius: f64,
    pub n: usize,
    pub restarts: usize,
    pub steps_per_restart: usize,
    pub seed: u64,
    pub best_perimeter: f64,
    pub best_polygon: PolygonRecord,
    pub theoretical_bound: f64,
    pub gap: f64,
    pub violations: usize,
    pub trials: usize,
    pub accepted_moves: usize,
}

impl SearchReport {
    pub const CSV_HEADER: &'static str = "geometry,r,n,restarts,best,bound,gap,violations,wall_time";

    pub fn csv_row(&self, wall_time_secs: f64) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.geometry,
            self.radius,
            self.n,
            self.restarts,
            self.best_perimeter,
            self.theoretical_bound,
            self.gap,
            self.violations,
            wall_time_secs
        )
    }
}

/// A random simple `n`-gon in the disk.
///
/// Raw tuples of uniform points are tried first; after 100 failures the
/// points are sorted by angle about the center, which yields a star-shaped
/// polygon.
pub fn random_simple_polygon(disk: &Disk, n: usize, seed: u64) -> Result<SimplePolygon> {
    random_polygon_with(disk, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn random_polygon_with<R: Rng + ?Sized>(disk: &Disk, n: usize, rng: &mut R) -> Result<SimplePolygon> {
    if n < 3 {
        return Err(Error::usage(format!("n must be at least 3, got {n}")));
    }
    let g = disk.geometry();
    let center = disk.center();
    for _ in 0..RANDOM_ATTEMPTS {
        let pts = (0..n).map(|_| disk.sample_uniform(rng)).collect();
        let poly = SimplePolygon::new(g, pts)?;
        if poly.is_simple_about(center)? {
            return Ok(poly);
        }
    }
    loop {
        let mut pts: Vec<_> = (0..n)
            .map(|_| {
                let x = disk.sample_uniform(rng);
                (disk.angle_of(x), x)
            })
            .collect();
        pts.sort_by(|u, v| u.0.total_cmp(&v.0));
        let poly = SimplePolygon::new(g, pts.into_iter().map(|(_, x)| x).collect())?;
        if poly.is_simple_about(center)? {
            return Ok(poly);
        }
    }
}

struct RestartOutcome {
    perimeter: f64,
    polygon: SimplePolygon,
    accepted: usize,
}

fn seed_polygon(cfg: &SearchConfig, disk: &Disk, restart: usize, rng: &mut ChaCha8Rng) -> Result<SimplePolygon> {
    if restart % 2 == 1 {
        let delta = cfg.radius / (2.0 * cfg.n as f64) * rng.gen_range(0.01..0.9);
        let built = if cfg.n % 2 == 1 {
            construct_odd_extremal(disk, cfg.n, delta)
        } else {
            construct_even_zigzag(disk, cfg.n, delta)
        };
        match built {
            Ok(p) => return Ok(p),
            Err(Error::Construction(_)) => {}
            Err(e) => return Err(e),
        }
    }
    random_polygon_with(disk, cfg.n, rng)
}

fn run_restart(cfg: &SearchConfig, disk: &Disk, bound: f64, restart: usize) -> Result<RestartOutcome> {
    let g = cfg.geometry;
    let center = disk.center();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);

    let mut poly = seed_polygon(cfg, disk, restart, &mut rng)?;
    let mut perimeter = poly.perimeter();
    check_bound(&poly, disk, perimeter, bound)?;
    let mut step = cfg.initial_step;
    let mut streak = 0;
    let mut accepted = 0;

    for _ in 0..cfg.steps_per_restart {
        let k = rng.gen_range(0..cfg.n);
        let angle = rng.gen::<f64>() * std::f64::consts::TAU;
        let v = poly.vertices()[k];
        let moved = Isometry::translation_to(g, v).apply(g.exp_origin(step * angle.cos(), step * angle.sin()));

        let mut ok = disk.contains(moved);
        let mut trial = None;
        if ok {
            let mut next = poly.clone();
            next.set_vertex(k, moved);
            let p = next.perimeter();
            ok = p > perimeter && poly.is_simple_after_move(k, moved, center)?;
            trial = Some((next, p));
        }
        match trial {
            Some((next, p)) if ok => {
                poly = next;
                perimeter = p;
                accepted += 1;
                streak = 0;
                check_bound(&poly, disk, perimeter, bound)?;
                if accepted % REVALIDATE_EVERY == 0 && !(poly.contained_in(disk) && poly.is_simple_about(center)?) {
                    return Err(Error::Internal("accepted polygon failed re-validation".into()));
                }
            }
            _ => {
                streak += 1;
                if streak >= REJECTION_STREAK {
                    step *= cfg.cooling;
                    streak = 0;
                }
            }
        }
    }
    Ok(RestartOutcome {
        perimeter,
        polygon: poly,
        accepted,
    })
}

fn check_bound(poly: &SimplePolygon, disk: &Disk, perimeter: f64, bound: f64) -> Result<()> {
    if perimeter > bound + BOUND_TOL {
        return Err(Error::CounterexampleFound {
            polygon: Box::new(poly.to_record(disk)),
            perimeter,
            bound,
        });
    }
    Ok(())
}

/// Climb from every restart in parallel and keep the longest polygon (the
/// lowest restart index wins ties).
pub fn hill_climb(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    let disk = Disk::centered(cfg.geometry, cfg.radius)?;
    let bound = supremum(cfg.geometry, cfg.radius, cfg.n)?;
    let outcomes = (0..cfg.restarts)
        .into_par_iter()
        .map(|i| run_restart(cfg, &disk, bound, i))
        .collect::<Result<Vec<_>>>()?;

    let accepted_moves = outcomes.iter().map(|o| o.accepted).sum();
    let best = outcomes
        .into_iter()
        .reduce(|x, y| if y.perimeter > x.perimeter { y } else { x })
        .expect("at least one restart");
    Ok(SearchReport {
        schema_version: SCHEMA_VERSION,
        geometry: cfg.geometry,
        radius: cfg.radius,
        n: cfg.n,
        restarts: cfg.restarts,
        steps_per_restart: cfg.steps_per_restart,
        seed: cfg.seed,
        best_perimeter: best.perimeter,
        best_polygon: best.polygon.to_record(&disk),
        theoretical_bound: bound,
        gap: bound - best.perimeter,
        violations: 0,
        trials: cfg.restarts * cfg.steps_per_restart,
        accepted_moves,
    })
}
