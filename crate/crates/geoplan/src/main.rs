use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use geoplan::experiments::{
    cycle_totals, emit_csv, run_cycles, run_experiment_a, sample_pairs, CycleSpec, ExperimentError,
    Planner as PlannerId,
};
use geoplan::formats::{load_database, read_reference_table, LoadError};
use geoplan_core::geodesy::inverse;
use geoplan_core::{
    AStarSession, DliteSession, Ellipsoid, GeodesyError, GeographicCoordinate, GraphDatabase,
    LpaSession, PlanError, Route,
};

/// Geodesic distances and shortest itineraries over a city graph.
#[derive(Debug, Parser)]
#[command(name = "geoplan", version)]
struct Cli {
    /// City coordinates file.
    #[arg(long, global = true, default_value = "data/cities.txt")]
    coords: PathBuf,
    /// City connections file.
    #[arg(long, global = true, default_value = "data/connections.txt")]
    conns: PathBuf,
    /// Ellipsoid equatorial radius, meters.
    #[arg(long, global = true, default_value_t = Ellipsoid::WGS84.a())]
    a: f64,
    /// Ellipsoid flattening.
    #[arg(long, global = true, default_value_t = Ellipsoid::WGS84.f())]
    f: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the inverse geodesic problem between two points.
    #[command(allow_negative_numbers = true)]
    Inverse {
        lat1: f64,
        lon1: f64,
        lat2: f64,
        lon2: f64,
    },
    /// Plan a route between two cities.
    Route {
        start: String,
        goal: String,
        #[arg(long, value_enum, default_value_t = Planner::Astar)]
        planner: Planner,
        /// City to avoid; repeatable.
        #[arg(long = "block")]
        block: Vec<String>,
        /// Move the start here and replan (dstarlite only); repeatable.
        #[arg(long = "move-start")]
        move_start: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Check the database files and summarize them.
    Validate,
    /// Run a benchmark experiment.
    Bench {
        #[arg(long, value_enum, ignore_case = true)]
        experiment: Experiment,
        #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u32).range(1..))]
        cycles: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        iterations: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Fixed start city; drawn per cycle when omitted.
        #[arg(long)]
        start: Option<String>,
        /// Fixed goal city; drawn per cycle when omitted.
        #[arg(long)]
        goal: Option<String>,
        /// Where to write the CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Reference distance table for experiment A.
        #[arg(long, default_value = "data/reference_distances.csv")]
        reference: PathBuf,
        /// Number of reference pairs to sample for experiment A; all by default.
        #[arg(long)]
        pairs: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Planner {
    Astar,
    Lpastar,
    Dstarlite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

enum Failure {
    Usage(String),
    Domain(String),
    NoRoute(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::NoRoute(_) => 3,
        }
    }
}

impl From<PlanError> for Failure {
    fn from(e: PlanError) -> Self {
        match e {
            PlanError::NoRoute { .. } => Failure::NoRoute(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<GeodesyError> for Failure {
    fn from(e: GeodesyError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Usage(m) | Failure::Domain(m) | Failure::NoRoute(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let ellipsoid = Ellipsoid::new(cli.a, cli.f)?;
    match cli.command {
        Command::Inverse { lat1, lon1, lat2, lon2 } => {
            cmd_inverse(lat1, lon1, lat2, lon2, &ellipsoid)
        }
        Command::Route { start, goal, planner, block, move_start, format } => {
            if !move_start.is_empty() && planner != Planner::Dstarlite {
                return Err(Failure::Usage("--move-start requires --planner dstarlite".into()));
            }
            let db = load_database(&cli.coords, &cli.conns)?;
            cmd_route(&db, ellipsoid, &start, &goal, planner, &block, &move_start, format)
        }
        Command::Validate => cmd_validate(&cli.coords, &cli.conns),
        Command::Bench { experiment, cycles, iterations, seed, start, goal, out, reference, pairs } => {
            let csv = match experiment {
                Experiment::A => bench_a(&reference, pairs, seed, &ellipsoid)?,
                Experiment::B | Experiment::C => {
                    let db = load_database(&cli.coords, &cli.conns)?;
                    let spec = CycleSpec {
                        seed,
                        start,
                        goal,
                        iterations: iterations as usize,
                        cycles: cycles as usize,
                        moving_start: experiment == Experiment::C,
                    };
                    bench_cycles(&db, ellipsoid, &spec)?
                }
            };
            if let Some(path) = out {
                fs::write(&path, &csv.1)
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            }
            Ok(csv.0)
        }
    }
}

/// `1234567.8915` as `1,234,567.892`.
fn grouped(meters: f64) -> String {
    let s = format!("{meters:.3}");
    let (int, frac) = s.split_once('.').unwrap_or((&s, ""));
    let (sign, digits) = int.strip_prefix('-').map_or(("", int), |d| ("-", d));
    let mut out = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(c);
    }
    format!("{sign}{out}.{frac}")
}

fn cmd_inverse(
    lat1: f64,
    lon1: f64,
    lat2: f64,
    lon2: f64,
    ellipsoid: &Ellipsoid,
) -> Result<String, Failure> {
    let p = GeographicCoordinate::new(lat1, lon1)?;
    let q = GeographicCoordinate::new(lat2, lon2)?;
    let sol = inverse(p, q, ellipsoid)?;
    let mut out = String::new();
    let _ = writeln!(out, "distance:   {} m ({:.3} km)", grouped(sol.s12), sol.s12 / 1000.0);
    let _ = writeln!(out, "azimuth 1:  {:.9} deg", sol.alpha1);
    let _ = writeln!(out, "azimuth 2:  {:.9} deg", sol.alpha2);
    let _ = writeln!(out, "iterations: {}", sol.iterations);
    Ok(out)
}

struct RouteWriter {
    format: Format,
    out: String,
}

impl RouteWriter {
    fn new(format: Format) -> Self {
        let mut out = String::new();
        if format == Format::Csv {
            out.push_str("plan,stop,city,lat,lon,cumulative_m\n");
        }
        RouteWriter { format, out }
    }

    fn push(&mut self, plan: usize, route: &Route) {
        match self.format {
            Format::Human => {
                if plan > 1 {
                    self.out.push('\n');
                }
                let _ = writeln!(self.out, "plan {plan}:");
                for (i, s) in route.stops.iter().enumerate() {
                    let g = s.g.map_or_else(|| "?".into(), |g| format!("{:.3}", g.meters() / 1000.0));
                    let _ = writeln!(self.out, "  {:>3}  {:<24} {:>12} km", i + 1, s.name, g);
                }
                let _ = writeln!(
                    self.out,
                    "total: {:.3} km over {} stops",
                    route.total_cost.meters() / 1000.0,
                    route.stops.len()
                );
            }
            Format::Csv => {
                for (i, s) in route.stops.iter().enumerate() {
                    let g = s.g.map_or_else(String::new, |g| g.meters().to_string());
                    let _ = writeln!(
                        self.out,
                        "{plan},{},{},{},{},{g}",
                        i + 1,
                        csv_field(&s.name),
                        s.coord.lat(),
                        s.coord.lon()
                    );
                }
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_route(
    db: &GraphDatabase,
    ellipsoid: Ellipsoid,
    start: &str,
    goal: &str,
    planner: Planner,
    block: &[String],
    moves: &[String],
    format: Format,
) -> Result<String, Failure> {
    let blocked: Vec<&str> = block.iter().map(String::as_str).collect();
    let mut w = RouteWriter::new(format);
    match planner {
        Planner::Astar => {
            let route = AStarSession::new(db, ellipsoid, start, goal, &blocked)?.run()?;
            w.push(1, &route);
        }
        Planner::Lpastar => {
            let route = LpaSession::new(db, ellipsoid, start, goal, &blocked)?.compute()?;
            w.push(1, &route);
        }
        Planner::Dstarlite => {
            let mut session = DliteSession::new(db, ellipsoid, start, goal, &blocked)?;
            w.push(1, &session.compute()?);
            for (i, to) in moves.iter().enumerate() {
                session.move_start(to)?;
                w.push(i + 2, &session.compute()?);
            }
        }
    }
    Ok(w.out)
}

fn cmd_validate(coords: &Path, conns: &Path) -> Result<String, Failure> {
    let db = load_database(coords, conns)?;
    let mut histogram = BTreeMap::new();
    for r in db.iter() {
        *histogram.entry(r.degree()).or_insert(0usize) += 1;
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} cities, {} edges", db.len(), db.edge_count());
    let _ = writeln!(out, "degree histogram:");
    for (degree, count) in histogram {
        let _ = writeln!(out, "  {degree:>3}: {count}");
    }
    Ok(out)
}

/// Returns (stdout report, CSV).
fn bench_a(
    reference: &Path,
    pairs: Option<usize>,
    seed: u64,
    ellipsoid: &Ellipsoid,
) -> Result<(String, String), Failure> {
    let table = read_reference_table(reference)?;
    let sample = sample_pairs(&table, pairs, seed);
    let (records, summary) = run_experiment_a(&sample, ellipsoid);

    let mut csv = String::from("lat1,lon1,lat2,lon2,distance_m,reference_m,agreement_pct,error\n");
    for r in &records {
        let p = &r.pair;
        let (ours, pct, error) = match &r.ours {
            Ok(s) => (s.to_string(), r.agreement_pct().unwrap_or(0.0).to_string(), String::new()),
            Err(e) => {
                eprintln!("pair ({}, {}) -> ({}, {}): {e}", p.lat1, p.lon1, p.lat2, p.lon2);
                (String::new(), String::new(), csv_field(&e.to_string()))
            }
        };
        let _ = writeln!(
            csv,
            "{},{},{},{},{ours},{},{pct},{error}",
            p.lat1, p.lon1, p.lat2, p.lon2, p.distance_m
        );
    }

    let mut out = String::new();
    let _ = writeln!(out, "pairs: {} solved, {} failed", summary.solved, summary.failures);
    let pct = |v: Option<f64>| v.map_or_else(|| "n/a".into(), |v| format!("{v:.6}%"));
    let _ = writeln!(out, "agreement mean: {}", pct(summary.mean_pct));
    let _ = writeln!(out, "agreement min:  {}", pct(summary.min_pct));
    let _ = writeln!(out, "agreement max:  {}", pct(summary.max_pct));
    let max_err = summary.max_error_m.map_or_else(|| "n/a".into(), |e| format!("{e:.6} m"));
    let _ = writeln!(out, "largest error:  {max_err}");
    let _ = writeln!(out, "errors >= 25 m: {}", summary.large_errors);
    Ok((out, csv))
}

fn bench_cycles(
    db: &GraphDatabase,
    ellipsoid: Ellipsoid,
    spec: &CycleSpec,
) -> Result<(String, String), Failure> {
    let records = run_cycles(db, ellipsoid, spec)?;
    let planners = if spec.moving_start {
        [PlannerId::LpaStar, PlannerId::DStarLite]
    } else {
        [PlannerId::AStar, PlannerId::LpaStar]
    };
    let totals = planners.map(|p| cycle_totals(&records, p));

    let mut out = String::new();
    let _ = write!(out, "cycle  iters");
    for p in planners {
        let _ = write!(out, " {:>12} {:>10} {:>10}", format!("{p}.geo"), "exp", "us");
    }
    out.push('\n');
    for c in 0..totals[0].len() {
        let _ = write!(out, "{c:>5} {:>6}", totals[0][c].iterations);
        for t in &totals {
            let _ = write!(out, " {:>12} {:>10} {:>10}", t[c].geodesy_calls, t[c].expansions, t[c].wall_us);
        }
        out.push('\n');
    }
    Ok((out, emit_csv(&records)))
}
