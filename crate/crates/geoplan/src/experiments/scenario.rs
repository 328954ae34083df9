//! Seeded event streams for Experiments B and C.
//!
//! Streams are generated against the oracle before any planner runs, so
//! every planner replays exactly the same endpoints, moves and blockages,
//! and disconnecting blockages are rolled back up front.

use std::collections::BTreeSet;

use geoplan_core::{CityId, PlanError, Route};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::oracle::{dijkstra, EdgeCosts};
use super::{CycleSpec, ExperimentError};

/// Endpoint draws per cycle before giving up.
const MAX_ENDPOINT_DRAWS: usize = 10_000;

/// One replan request after the initial plan.
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    /// New start, for moving-start cycles.
    pub move_to: Option<CityId>,
    pub block: CityId,
    /// Oracle cost after the event, meters.
    pub expected_cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleScenario {
    pub cycle: usize,
    pub start: CityId,
    pub goal: CityId,
    /// Oracle cost of the initial plan, meters.
    pub initial_cost: f64,
    /// Iterations 2, 3, ...; shorter than requested when a moving start
    /// reaches the goal's doorstep early.
    pub events: Vec<Event>,
}

/// The cycle's own generator: one ChaCha stream per cycle index, so cycles
/// are independent of each other and of how many are run.
pub fn cycle_rng(seed: u64, cycle: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(cycle as u64);
    rng
}

fn intermediates(route: &Route, edges: &EdgeCosts<'_>) -> Vec<CityId> {
    let db = edges.db();
    let n = route.stops.len();
    if n < 3 {
        return Vec::new();
    }
    route.stops[1..n - 1]
        .iter()
        .map(|s| db.id(&s.name).expect("route stop from this database"))
        .collect()
}

/// Picks an intermediate of `route` whose blockage keeps the pair connected,
/// trying candidates in a seeded random order. Returns it with the new route.
fn draw_blockage(
    rng: &mut ChaCha8Rng,
    edges: &EdgeCosts<'_>,
    route: &Route,
    start: CityId,
    goal: CityId,
    blocked: &mut BTreeSet<CityId>,
) -> Option<(CityId, Route)> {
    let mut candidates = intermediates(route, edges);
    candidates.shuffle(rng);
    for v in candidates {
        blocked.insert(v);
        match dijkstra(edges, start, goal, blocked) {
            Ok(r) => return Some((v, r)),
            Err(_) => {
                blocked.remove(&v);
            }
        }
    }
    None
}

fn draw_endpoints(
    rng: &mut ChaCha8Rng,
    edges: &EdgeCosts<'_>,
    spec: &CycleSpec,
) -> Result<(CityId, CityId), ExperimentError> {
    let db = edges.db();
    let resolve = |name: &str| {
        db.id(name)
            .ok_or_else(|| ExperimentError::Plan(PlanError::NotFound(name.into())))
    };
    let all: Vec<CityId> = db.ids().collect();
    let start = spec.start.as_deref().map(resolve).transpose()?;
    let goal = spec.goal.as_deref().map(resolve).transpose()?;
    let start = start.unwrap_or_else(|| all[rng.gen_range(0..all.len())]);
    let goal = goal.unwrap_or_else(|| all[rng.gen_range(0..all.len())]);
    Ok((start, goal))
}

/// Builds one cycle's stream. Endpoints whose route has no intermediate, or
/// that run out of blockable intermediates before the last iteration, are
/// redrawn; fixed endpoints fail instead.
pub fn generate_cycle(
    edges: &EdgeCosts<'_>,
    spec: &CycleSpec,
    cycle: usize,
) -> Result<CycleScenario, ExperimentError> {
    let mut rng = cycle_rng(spec.seed, cycle);
    let fixed = spec.start.is_some() && spec.goal.is_some();
    for _ in 0..MAX_ENDPOINT_DRAWS {
        let (start, goal) = draw_endpoints(&mut rng, edges, spec)?;
        if let Some(s) = try_cycle(&mut rng, edges, spec, cycle, start, goal) {
            return Ok(s);
        }
        if fixed {
            break;
        }
    }
    Err(ExperimentError::ScenarioExhausted { cycle })
}

fn try_cycle(
    rng: &mut ChaCha8Rng,
    edges: &EdgeCosts<'_>,
    spec: &CycleSpec,
    cycle: usize,
    start: CityId,
    goal: CityId,
) -> Option<CycleScenario> {
    if start == goal {
        return None;
    }
    let initial = dijkstra(edges, start, goal, &BTreeSet::new()).ok()?;
    if intermediates(&initial, edges).is_empty() {
        return None;
    }
    let db = edges.db();
    let mut blocked = BTreeSet::new();
    let mut current = start;
    let mut route = initial.clone();
    let mut events = Vec::new();
    for _ in 1..spec.iterations {
        let mut move_to = None;
        if spec.moving_start {
            let next = db.id(&route.stops[1].name).expect("route stop from this database");
            if next == goal {
                break;
            }
            current = next;
            move_to = Some(next);
            route = dijkstra(edges, current, goal, &blocked).ok()?;
        }
        match draw_blockage(rng, edges, &route, current, goal, &mut blocked) {
            Some((block, next_route)) => {
                route = next_route;
                events.push(Event {
                    move_to,
                    block,
                    expected_cost: route.total_cost.meters(),
                });
            }
            // a moving start may simply run out of room near the goal
            None if spec.moving_start && move_to.is_some() => break,
            None => return None,
        }
    }
    Some(CycleScenario {
        cycle,
        start,
        goal,
        initial_cost: initial.total_cost.meters(),
        events,
    })
}
