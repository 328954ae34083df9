//! Seeded, repeatable benchmark protocols.
//!
//! * A: solver distances against a reference table.
//! * B: static endpoints, one new blockage per iteration; A* rebuilt from
//!   scratch against LPA* replanning in place.
//! * C: the start advances one stop per iteration before the blockage;
//!   LPA* re-initialized at the new start against D* Lite's `km` update.
//!
//! Iteration 1 of a cycle is the initial plan. Blockages accumulate within
//! a cycle and are dropped between cycles.

mod oracle;
mod precision;
mod scenario;

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use geoplan_core::{
    AStarSession, CityId, DliteSession, Ellipsoid, GeodesyError, GraphDatabase, LpaSession,
    PlanError, Route,
};
use serde::Serialize;

pub use oracle::{dijkstra, EdgeCosts};
pub use precision::{run_experiment_a, sample_pairs, PrecisionRecord, PrecisionSummary};
pub use scenario::{cycle_rng, generate_cycle, CycleScenario, Event};

/// Agreement demanded between a planner and the oracle, meters.
pub const COST_TOLERANCE_M: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSpec {
    pub seed: u64,
    /// Fixed endpoints; `None` draws them per cycle.
    pub start: Option<String>,
    pub goal: Option<String>,
    pub iterations: usize,
    pub cycles: usize,
    /// False for Experiment B, true for Experiment C.
    pub moving_start: bool,
}

impl CycleSpec {
    pub fn new(seed: u64, moving_start: bool) -> Self {
        CycleSpec {
            seed,
            start: None,
            goal: None,
            iterations: 10,
            cycles: 17,
            moving_start,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("iterations and cycles must be at least 1")]
    InvalidSpec,
    #[error("cycle {cycle}: no endpoint pair with enough blockable intermediates")]
    ScenarioExhausted { cycle: usize },
    #[error("cycle {cycle}, iteration {iteration}: {planner} cost {got} m, oracle {expected} m")]
    OracleMismatch {
        cycle: usize,
        iteration: usize,
        planner: Planner,
        got: f64,
        expected: f64,
    },
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Geodesy(#[from] GeodesyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Planner {
    #[serde(rename = "astar")]
    AStar,
    #[serde(rename = "lpastar")]
    LpaStar,
    #[serde(rename = "dstarlite")]
    DStarLite,
}

impl Planner {
    pub fn id(self) -> &'static str {
        match self {
            Planner::AStar => "astar",
            Planner::LpaStar => "lpastar",
            Planner::DStarLite => "dstarlite",
        }
    }
}

impl fmt::Display for Planner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One planner's replan within a cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub cycle: usize,
    /// 1-based; iteration 1 is the initial plan.
    pub iteration: usize,
    pub planner: Planner,
    pub route_cost_m: f64,
    /// What the oracle says the cost should be.
    pub oracle_cost_m: f64,
    pub expansions: u64,
    pub geodesy_calls: u64,
    pub wall_us: u64,
    /// Vertex blocked before this replan; `None` on iteration 1.
    pub blocked_vertex: Option<String>,
}

/// Header of the benchmark CSV.
pub const CSV_HEADER: &str =
    "cycle,iteration,planner,route_cost_m,expansions,geodesy_calls,wall_us,blocked_vertex";

#[derive(Serialize)]
struct CsvRow<'a> {
    cycle: usize,
    iteration: usize,
    planner: Planner,
    route_cost_m: f64,
    expansions: u64,
    geodesy_calls: u64,
    wall_us: u64,
    blocked_vertex: &'a str,
}

/// Header plus one row per record, in the given order.
pub fn emit_csv(records: &[IterationRecord]) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow {
            cycle: r.cycle,
            iteration: r.iteration,
            planner: r.planner,
            route_cost_m: r.route_cost_m,
            expansions: r.expansions,
            geodesy_calls: r.geodesy_calls,
            wall_us: r.wall_us,
            blocked_vertex: r.blocked_vertex.as_deref().unwrap_or(""),
        })
        .expect("in-memory csv write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf-8");
    format!("{CSV_HEADER}\n{body}")
}

/// Per-cycle cumulative counters of one planner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CycleTotals {
    pub expansions: u64,
    pub geodesy_calls: u64,
    pub wall_us: u64,
    pub iterations: usize,
}

/// Sums `records` per cycle for `planner`, indexed by cycle.
pub fn cycle_totals(records: &[IterationRecord], planner: Planner) -> Vec<CycleTotals> {
    let cycles = records.iter().map(|r| r.cycle + 1).max().unwrap_or(0);
    let mut out = vec![CycleTotals::default(); cycles];
    for r in records.iter().filter(|r| r.planner == planner) {
        let t = &mut out[r.cycle];
        t.expansions += r.expansions;
        t.geodesy_calls += r.geodesy_calls;
        t.wall_us += r.wall_us;
        t.iterations += 1;
    }
    out
}

/// Generates every cycle's event stream up front.
pub fn generate_scenarios(
    edges: &EdgeCosts<'_>,
    spec: &CycleSpec,
) -> Result<Vec<CycleScenario>, ExperimentError> {
    if spec.iterations == 0 || spec.cycles == 0 {
        return Err(ExperimentError::InvalidSpec);
    }
    (0..spec.cycles).map(|c| generate_cycle(edges, spec, c)).collect()
}

struct Recorder<'a> {
    db: &'a GraphDatabase,
    scenario: &'a CycleScenario,
    records: Vec<IterationRecord>,
}

impl Recorder<'_> {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        iteration: usize,
        planner: Planner,
        route: &Route,
        expansions: u64,
        geodesy_calls: u64,
        started: Instant,
    ) -> Result<(), ExperimentError> {
        let wall_us = started.elapsed().as_micros() as u64;
        let (expected, blocked) = match iteration {
            1 => (self.scenario.initial_cost, None),
            i => {
                let e = &self.scenario.events[i - 2];
                (e.expected_cost, Some(self.db.record(e.block).name().to_string()))
            }
        };
        let got = route.total_cost.meters();
        if (got - expected).abs() > COST_TOLERANCE_M {
            return Err(ExperimentError::OracleMismatch {
                cycle: self.scenario.cycle,
                iteration,
                planner,
                got,
                expected,
            });
        }
        self.records.push(IterationRecord {
            cycle: self.scenario.cycle,
            iteration,
            planner,
            route_cost_m: got,
            oracle_cost_m: expected,
            expansions,
            geodesy_calls,
            wall_us,
            blocked_vertex: blocked,
        });
        Ok(())
    }
}

fn blocked_names<'a>(db: &'a GraphDatabase, blocked: &BTreeSet<CityId>) -> Vec<&'a str> {
    blocked.iter().map(|&id| db.record(id).name()).collect()
}

/// A* from scratch on every iteration against one LPA* session that absorbs
/// each blockage in place.
pub fn run_experiment_b(
    db: &GraphDatabase,
    ellipsoid: Ellipsoid,
    scenarios: &[CycleScenario],
) -> Result<Vec<IterationRecord>, ExperimentError> {
    let mut out = Vec::new();
    for sc in scenarios {
        let (start, goal) = (db.record(sc.start).name(), db.record(sc.goal).name());

        let mut rec = Recorder { db, scenario: sc, records: Vec::new() };
        let mut blocked = BTreeSet::new();
        for iteration in 1..=sc.events.len() + 1 {
            if iteration > 1 {
                blocked.insert(sc.events[iteration - 2].block);
            }
            let names = blocked_names(db, &blocked);
            let t = Instant::now();
            let mut session = AStarSession::new(db, ellipsoid, start, goal, &names)?;
            let route = session.run()?;
            rec.push(iteration, Planner::AStar, &route, session.expansions(), session.geodesy_calls(), t)?;
        }

        let t = Instant::now();
        let mut lpa = LpaSession::new(db, ellipsoid, start, goal, &[])?;
        let route = lpa.compute()?;
        rec.push(1, Planner::LpaStar, &route, lpa.expansions(), lpa.geodesy_calls(), t)?;
        for (i, ev) in sc.events.iter().enumerate() {
            let (e0, g0) = (lpa.expansions(), lpa.geodesy_calls());
            let t = Instant::now();
            lpa.apply_blockage(&[(db.record(ev.block).name(), true)])?;
            let route = lpa.compute()?;
            rec.push(i + 2, Planner::LpaStar, &route, lpa.expansions() - e0, lpa.geodesy_calls() - g0, t)?;
        }
        out.extend(rec.records);
    }
    Ok(out)
}

/// LPA* rebuilt at every new start against one D* Lite session that moves
/// its start and absorbs each blockage in place.
pub fn run_experiment_c(
    db: &GraphDatabase,
    ellipsoid: Ellipsoid,
    scenarios: &[CycleScenario],
) -> Result<Vec<IterationRecord>, ExperimentError> {
    let mut out = Vec::new();
    for sc in scenarios {
        let goal = db.record(sc.goal).name();
        let mut rec = Recorder { db, scenario: sc, records: Vec::new() };

        let mut blocked = BTreeSet::new();
        let mut start = db.record(sc.start).name();
        for iteration in 1..=sc.events.len() + 1 {
            if iteration > 1 {
                let ev = &sc.events[iteration - 2];
                if let Some(to) = ev.move_to {
                    start = db.record(to).name();
                }
                blocked.insert(ev.block);
            }
            let names = blocked_names(db, &blocked);
            let t = Instant::now();
            let mut lpa = LpaSession::new(db, ellipsoid, start, goal, &names)?;
            let route = lpa.compute()?;
            rec.push(iteration, Planner::LpaStar, &route, lpa.expansions(), lpa.geodesy_calls(), t)?;
        }

        let t = Instant::now();
        let mut dl = DliteSession::new(db, ellipsoid, db.record(sc.start).name(), goal, &[])?;
        let route = dl.compute()?;
        rec.push(1, Planner::DStarLite, &route, dl.expansions(), dl.geodesy_calls(), t)?;
        for (i, ev) in sc.events.iter().enumerate() {
            let (e0, g0) = (dl.expansions(), dl.geodesy_calls());
            let t = Instant::now();
            if let Some(to) = ev.move_to {
                dl.move_start(db.record(to).name())?;
            }
            dl.apply_blockage(&[(db.record(ev.block).name(), true)])?;
            let route = dl.compute()?;
            rec.push(i + 2, Planner::DStarLite, &route, dl.expansions() - e0, dl.geodesy_calls() - g0, t)?;
        }
        out.extend(rec.records);
    }
    Ok(out)
}

/// Generates the scenarios for `spec` and runs Experiment B or C on them.
pub fn run_cycles(
    db: &GraphDatabase,
    ellipsoid: Ellipsoid,
    spec: &CycleSpec,
) -> Result<Vec<IterationRecord>, ExperimentError> {
    let edges = EdgeCosts::new(db, &ellipsoid)?;
    let scenarios = generate_scenarios(&edges, spec)?;
    if spec.moving_start {
        run_experiment_c(db, ellipsoid, &scenarios)
    } else {
        run_experiment_b(db, ellipsoid, &scenarios)
    }
}
