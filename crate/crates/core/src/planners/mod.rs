//! A*, LPA* and D* Lite over a [`PlannerMap`](crate::toolbox::PlannerMap).
//!
//! All three use geodesic distances as both edge costs and heuristics; the
//! heuristic is consistent, so every planner returns a minimum-cost route.
//! LPA* keeps its map and queue between searches with fixed endpoints;
//! D* Lite searches from the goal and additionally lets the start move.

mod astar;
mod dlite;
mod incremental;
mod lpa;

use alloc::vec::Vec;

pub use crate::toolbox::PlanError;
pub use astar::{astar_plan, AStarSession};
pub use dlite::DliteSession;
pub use lpa::LpaSession;

use crate::graph::CityId;
use crate::toolbox::PlannerMap;

fn resolve_all(map: &PlannerMap<'_>, names: &[&str]) -> Result<Vec<CityId>, PlanError> {
    names.iter().map(|n| map.resolve(n)).collect()
}
