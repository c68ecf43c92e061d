//! `polyperim`: perimeter bounds, extremal polygons, lemma checks and
//! searches from the command line.
//!
//! Exit codes: 0 success, 2 usage, 3 domain, 4 construction, 5 certification
//! failure (a counterexample or a failed lemma check in the guaranteed
//! regime), 1 internal error.

mod format;
mod svg;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyperim_core::lemma::{verify_random_instances, MassReport};
use polyperim_core::polygon::SCHEMA_VERSION;
use polyperim_core::{
    construct_even_zigzag, construct_odd_extremal, hill_climb, lemma_move, max_inscribed_triangle_perimeter,
    optimal_bound, spherical_counterexample, supremum, Disk, Error, Geometry, IsoscelesBound, PolygonRecord,
    SearchConfig, SearchReport,
};
use serde::Serialize;

use crate::format::num;

#[derive(Parser)]
#[command(name = "polyperim", version, about = "Maximum perimeters of simple polygons in disks of E², H² and S²")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest perimeter of a simple n-gon (odd n) in a disk.
    Bound {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// A simple n-gon whose perimeter approaches the supremum.
    Extremal {
        #[command(flatten)]
        problem: Problem,
        /// Spacing of the nested vertices; must lie in (0, radius / 2n).
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Hill-climb over simple n-gons and compare against the supremum.
    Search {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// Initial step length; defaults to a tenth of the radius.
        #[arg(long)]
        initial_step: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        cooling: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The spherical configuration where no chain-lengthening move exists.
    Counterexample {
        /// Must lie in (0, 0.1).
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the chain-lengthening move on random valid instances.
    LemmaCheck {
        #[arg(long, value_parser = parse_geometry)]
        geometry: Geometry,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Problem {
    /// e2, h2 or s2.
    #[arg(long, value_parser = parse_geometry)]
    geometry: Geometry,
    #[arg(long)]
    radius: f64,
    /// Number of polygon vertices.
    #[arg(long = "n")]
    n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

fn parse_geometry(s: &str) -> Result<Geometry, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced and the exit code it asks for.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) => 2,
        Error::Domain(_) => 3,
        Error::Construction(_) => 4,
        Error::LemmaViolation(_) | Error::CounterexampleFound { .. } => 5,
        Error::Internal(_) => 1,
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize") + "\n"
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn no_svg(command: &str) -> Error {
    Error::Usage(format!("svg output is only available for polygon figures, not for `{command}`"))
}

#[derive(Serialize)]
struct BoundOutput {
    schema_version: u32,
    #[serde(flatten)]
    bound: IsoscelesBound,
}

fn cmd_bound(p: &Problem, format: Format) -> Result<Output, Error> {
    let b = optimal_bound(p.geometry, p.radius, p.n)?;
    if !b.theorem_regime {
        eprintln!("warning: spherical radius above pi/4; the value is computed but not guaranteed to be the supremum");
    }
    Ok(Output::ok(match format {
        Format::Json => json(&BoundOutput { schema_version: SCHEMA_VERSION, bound: b }),
        Format::Csv => format!(
            "geometry,r,n,value,alpha,beta,phi,theorem_regime\n{},{},{},{},{},{},{},{}\n",
            b.geometry, b.radius, b.n, b.value, b.alpha, b.beta, b.phi, b.theorem_regime
        ),
        Format::Svg => return Err(no_svg("bound")),
        Format::Text => table(&[
            ("geometry", b.geometry.to_string()),
            ("radius", num(b.radius)),
            ("n", b.n.to_string()),
            ("value", num(b.value)),
            ("alpha", num(b.alpha)),
            ("beta", num(b.beta)),
            ("phi", num(b.phi)),
            ("central angle alpha", num(b.central_angle_alpha)),
            ("central angle beta", num(b.central_angle_beta)),
            ("theorem regime", b.theorem_regime.to_string()),
        ]),
    }))
}

#[derive(Serialize)]
struct ExtremalOutput {
    #[serde(flatten)]
    polygon: PolygonRecord,
    delta: f64,
    supremum: f64,
    deficit: f64,
}

fn cmd_extremal(p: &Problem, delta: f64, format: Format) -> Result<Output, Error> {
    let (g, r, n) = (p.geometry, p.radius, p.n);
    let sup = supremum(g, r, n)?;
    let disk = Disk::centered(g, r)?;
    let poly = if n % 2 == 1 {
        construct_odd_extremal(&disk, n, delta)?
    } else {
        construct_even_zigzag(&disk, n, delta)?
    };
    let per = poly.perimeter();
    let out = ExtremalOutput { polygon: poly.to_record(&disk), delta, supremum: sup, deficit: sup - per };
    Ok(Output::ok(match format {
        Format::Json => json(&out),
        Format::Csv => format!(
            "geometry,r,n,delta,perimeter,supremum,deficit\n{g},{r},{n},{delta},{per},{sup},{}\n",
            out.deficit
        ),
        Format::Svg => svg::polygon(
            &disk,
            poly.vertices(),
            &format!("{g} disk of radius {}, n = {n}, perimeter {}", num(r), num(per)),
        )?,
        Format::Text => {
            let mut text = table(&[
                ("geometry", g.to_string()),
                ("radius", num(r)),
                ("n", n.to_string()),
                ("delta", num(delta)),
                ("perimeter", num(per)),
                ("supremum", num(sup)),
                ("deficit", num(out.deficit)),
            ]);
            text.push_str("vertices\n");
            for v in poly.vertices() {
                let [x, y, z] = v.coords();
                text.push_str(&format!("  {} {} {}\n", num(x), num(y), num(z)));
            }
            text
        }
    }))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    p: &Problem,
    restarts: usize,
    steps: usize,
    initial_step: Option<f64>,
    cooling: f64,
    seed: u64,
    format: Format,
) -> Result<Output, Error> {
    let cfg = SearchConfig {
        restarts,
        steps_per_restart: steps,
        initial_step: initial_step.unwrap_or(0.1 * p.radius),
        cooling,
        seed,
        ..SearchConfig::new(p.geometry, p.radius, p.n)
    };
    let start = Instant::now();
    let rep: SearchReport = match hill_climb(&cfg) {
        Err(Error::CounterexampleFound { polygon, perimeter, bound }) => {
            eprintln!("{}", json(&polygon).trim_end());
            return Err(Error::CounterexampleFound { polygon, perimeter, bound });
        }
        other => other?,
    };
    let wall = start.elapsed().as_secs_f64();
    let code = if rep.violations > 0 { 5 } else { 0 };
    let text = match format {
        Format::Json => json(&rep),
        Format::Csv => format!("{}\n{}\n", SearchReport::CSV_HEADER, rep.csv_row(wall)),
        Format::Svg => {
            let (poly, disk) = rep.best_polygon.to_polygon()?;
            svg::polygon(
                &disk,
                poly.vertices(),
                &format!(
                    "best of {} restarts in a {} disk of radius {}: {} (bound {})",
                    rep.restarts,
                    rep.geometry,
                    num(rep.radius),
                    num(rep.best_perimeter),
                    num(rep.theoretical_bound)
                ),
            )?
        }
        Format::Text => table(&[
            ("geometry", rep.geometry.to_string()),
            ("radius", num(rep.radius)),
            ("n", rep.n.to_string()),
            ("restarts", rep.restarts.to_string()),
            ("steps per restart", rep.steps_per_restart.to_string()),
            ("seed", rep.seed.to_string()),
            ("best perimeter", num(rep.best_perimeter)),
            ("bound", num(rep.theoretical_bound)),
            ("gap", num(rep.gap)),
            ("violations", rep.violations.to_string()),
            ("accepted moves", rep.accepted_moves.to_string()),
            ("wall time (s)", num(wall)),
        ]),
    };
    Ok(Output { text, code })
}

#[derive(Serialize)]
struct CounterexampleOutput {
    schema_version: u32,
    epsilon: f64,
    radius: f64,
    center: [f64; 3],
    p: [f64; 3],
    q: [f64; 3],
    a: [f64; 3],
    b: [f64; 3],
    c: [f64; 3],
    delta: f64,
    chain_length: f64,
    chain_plus_delta: f64,
    triangle_max: f64,
    margin: f64,
    hypotheses_hold: bool,
    violated: bool,
    move_outcome: String,
}

fn cmd_counterexample(epsilon: f64, format: Format) -> Result<Output, Error> {
    let inst = spherical_counterexample(epsilon)?;
    let disk = *inst.octx.disk();
    let chain = inst.chain_length();
    let triangle_max = max_inscribed_triangle_perimeter(disk.geometry(), disk.radius())?;
    let chain_plus_delta = chain + inst.delta;
    let move_outcome = match lemma_move(&inst) {
        Ok(m) => format!("unexpected move with chain length {}", m.new_chain_length),
        Err(Error::LemmaViolation(v)) => v.reason,
        Err(e) => return Err(e),
    };
    let out = CounterexampleOutput {
        schema_version: SCHEMA_VERSION,
        epsilon,
        radius: disk.radius(),
        center: disk.center().coords(),
        p: inst.octx.p().coords(),
        q: inst.octx.q().coords(),
        a: inst.a.coords(),
        b: inst.b.coords(),
        c: inst.c.coords(),
        delta: inst.delta,
        chain_length: chain,
        chain_plus_delta,
        triangle_max,
        margin: chain_plus_delta - triangle_max,
        hypotheses_hold: inst.check_hypotheses()?,
        violated: chain_plus_delta > triangle_max,
        move_outcome,
    };
    Ok(Output::ok(match format {
        Format::Json => json(&out),
        Format::Csv => format!(
            "epsilon,radius,chain_plus_delta,triangle_max,margin,violated\n{},{},{},{},{},{}\n",
            out.epsilon, out.radius, out.chain_plus_delta, out.triangle_max, out.margin, out.violated
        ),
        Format::Svg => svg::chains(
            &disk,
            &[("[p, q]", vec![inst.octx.p(), inst.octx.q()]), ("[a, b]", vec![inst.a, inst.b])],
            &format!("spherical counterexample, epsilon = {}", num(epsilon)),
            &format!("chain + delta {} vs largest triangle {}", num(chain_plus_delta), num(triangle_max)),
        )?,
        Format::Text => table(&[
            ("epsilon", num(epsilon)),
            ("disk radius", num(out.radius)),
            ("delta = dist(p, q)", num(out.delta)),
            ("chain length", num(chain)),
            ("chain + delta", num(chain_plus_delta)),
            ("largest inscribed triangle", num(triangle_max)),
            ("margin", num(out.margin)),
            ("hypotheses hold", out.hypotheses_hold.to_string()),
            ("move", out.move_outcome.clone()),
            (
                "verdict",
                if out.violated { "Lemma conclusion unattainable" } else { "no contradiction" }.to_string(),
            ),
        ]),
    }))
}

#[derive(Serialize)]
struct LemmaCheckOutput {
    schema_version: u32,
    #[serde(flatten)]
    report: MassReport,
    passed: bool,
}

fn cmd_lemma_check(g: Geometry, r: f64, trials: usize, seed: u64, format: Format) -> Result<Output, Error> {
    let disk = Disk::centered(g, r)?;
    if format == Format::Svg {
        return Err(no_svg("lemma-check"));
    }
    let report = verify_random_instances(&disk, trials, seed)?;
    let passed = report.failures == 0;
    let code = if !passed && report.theorem_regime { 5 } else { 0 };
    if !passed && !report.theorem_regime {
        eprintln!("note: {} failures on a spherical disk above pi/4, where no move is guaranteed", report.failures);
    }
    let text = match format {
        Format::Json => json(&LemmaCheckOutput { schema_version: SCHEMA_VERSION, report, passed }),
        Format::Csv => format!(
            "geometry,r,trials,seed,attempts,acceptance_rate,failures,failures_meeting_pq,tight,theorem_regime\n{},{},{},{},{},{},{},{},{},{}\n",
            report.geometry,
            report.radius,
            report.trials,
            report.seed,
            report.attempts,
            report.acceptance_rate,
            report.failures,
            report.failures_meeting_pq,
            report.tight,
            report.theorem_regime
        ),
        Format::Svg => unreachable!("rejected above"),
        Format::Text => table(&[
            ("geometry", report.geometry.to_string()),
            ("radius", num(report.radius)),
            ("trials", report.trials.to_string()),
            ("seed", report.seed.to_string()),
            ("acceptance rate", num(report.acceptance_rate)),
            ("failures", report.failures.to_string()),
            ("failures through (p, q)", report.failures_meeting_pq.to_string()),
            ("tight moves", report.tight.to_string()),
            ("theorem regime", report.theorem_regime.to_string()),
            ("verdict", if passed { "pass" } else { "fail" }.to_string()),
        ]),
    };
    Ok(Output { text, code })
}

fn run(cli: Cli) -> Result<Output, Error> {
    match cli.command {
        Command::Bound { problem, format } => cmd_bound(&problem, format),
        Command::Extremal { problem, delta, format } => cmd_extremal(&problem, delta, format),
        Command::Search { problem, restarts, steps, initial_step, cooling, seed, format } => {
            cmd_search(&problem, restarts, steps, initial_step, cooling, seed, format)
        }
        Command::Counterexample { epsilon, format } => cmd_counterexample(epsilon, format),
        Command::LemmaCheck { geometry, radius, trials, seed, format } => {
            cmd_lemma_check(geometry, radius, trials, seed, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
