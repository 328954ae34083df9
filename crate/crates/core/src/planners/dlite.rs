use alloc::string::String;
use alloc::vec::Vec;

use super::incremental::IncrementalSearch;
use super::resolve_all;
use crate::cost::Cost;
use crate::geodesy::Ellipsoid;
use crate::graph::{CityId, GraphDatabase};
use crate::toolbox::{KeyedQueue, PlanError, PlannerMap, Route};

/// D* Lite: searches from the goal so the start can move between replans.
///
/// Moving the start raises the key modifier `km` instead of re-keying the
/// queue; outdated keys are refreshed lazily when they surface.
#[derive(Debug, Clone)]
pub struct DliteSession<'db> {
    search: IncrementalSearch<'db>,
    last: CityId,
}

impl<'db> DliteSession<'db> {
    /// Initializes the search: `rhs(goal) = 0`, goal queued, `km = 0`.
    pub fn new(
        db: &'db GraphDatabase,
        ellipsoid: Ellipsoid,
        start: &str,
        goal: &str,
        blocked: &[&str],
    ) -> Result<Self, PlanError> {
        let mut map = PlannerMap::new(db, ellipsoid);
        let (start, goal) = (map.resolve(start)?, map.resolve(goal)?);
        map.protect(&[start, goal]);
        for id in resolve_all(&map, blocked)? {
            map.set_blockage(id, true)?;
        }
        Ok(DliteSession {
            search: IncrementalSearch::new(map, goal, start, true)?,
            last: start,
        })
    }

    /// Brings the start up to date and returns the route from it to the goal.
    pub fn compute(&mut self) -> Result<Route, PlanError> {
        self.search.compute()
    }

    /// Advances the start. `km` grows by the heuristic from the previous
    /// start to the new one.
    pub fn move_start(&mut self, to: &str) -> Result<(), PlanError> {
        let id = self.search.map.resolve(to)?;
        self.search.move_target(id)?;
        self.last = id;
        Ok(())
    }

    /// Blocks (`true`) or unblocks (`false`) cities. Takes effect on the next
    /// [`DliteSession::compute`].
    pub fn apply_blockage(&mut self, changes: &[(&str, bool)]) -> Result<(), PlanError> {
        let mut ids = Vec::with_capacity(changes.len());
        for &(name, blocked) in changes {
            ids.push((self.search.map.resolve(name)?, blocked));
        }
        self.search.apply_blockage(&ids)
    }

    /// Resets `km` to zero by recomputing every queued key eagerly.
    pub fn rekey_all(&mut self) -> Result<(), PlanError> {
        self.search.rekey_all()
    }

    pub fn start(&self) -> CityId {
        self.search.start()
    }

    pub fn goal(&self) -> CityId {
        self.search.goal()
    }

    pub fn km(&self) -> Cost {
        self.search.km
    }

    /// The start as of the last move.
    pub fn last(&self) -> CityId {
        self.last
    }

    pub fn map(&self) -> &PlannerMap<'db> {
        &self.search.map
    }

    pub fn queue(&self) -> &KeyedQueue {
        &self.search.queue
    }

    pub fn expansions(&self) -> u64 {
        self.search.expansions
    }

    /// Outdated keys refreshed in place instead of expanded.
    pub fn rekeys(&self) -> u64 {
        self.search.rekeys
    }

    pub fn geodesy_calls(&self) -> u64 {
        self.search.map.geodesy_calls()
    }

    /// Verifies the lookahead and queue invariants; meant for tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        self.search.check_invariants()
    }
}
