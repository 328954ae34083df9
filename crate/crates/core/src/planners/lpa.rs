use alloc::string::String;

use super::incremental::IncrementalSearch;
use super::resolve_all;
use crate::geodesy::Ellipsoid;
use crate::graph::{CityId, GraphDatabase};
use crate::toolbox::{KeyedQueue, PlanError, PlannerMap, Route};

/// Lifelong Planning A* between fixed endpoints.
///
/// The map, queue and counters survive between [`LpaSession::compute`]
/// calls; after a blockage change only the affected part of the search is
/// redone.
#[derive(Debug, Clone)]
pub struct LpaSession<'db> {
    search: IncrementalSearch<'db>,
}

impl<'db> LpaSession<'db> {
    /// Initializes the search: `rhs(start) = 0` and start queued.
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
        Ok(LpaSession {
            search: IncrementalSearch::new(map, start, goal, false)?,
        })
    }

    /// Brings the goal up to date and returns the current shortest route.
    pub fn compute(&mut self) -> Result<Route, PlanError> {
        self.search.compute()
    }

    /// Blocks (`true`) or unblocks (`false`) cities. Takes effect on the next
    /// [`LpaSession::compute`].
    pub fn apply_blockage(&mut self, changes: &[(&str, bool)]) -> Result<(), PlanError> {
        let mut ids = alloc::vec::Vec::with_capacity(changes.len());
        for &(name, blocked) in changes {
            ids.push((self.search.map.resolve(name)?, blocked));
        }
        self.search.apply_blockage(&ids)
    }

    pub fn start(&self) -> CityId {
        self.search.start()
    }

    pub fn goal(&self) -> CityId {
        self.search.goal()
    }

    pub fn map(&self) -> &PlannerMap<'db> {
        &self.search.map
    }

    pub fn queue(&self) -> &KeyedQueue {
        &self.search.queue
    }

    /// Vertices removed from the queue and expanded, over the session.
    pub fn expansions(&self) -> u64 {
        self.search.expansions
    }

    pub fn geodesy_calls(&self) -> u64 {
        self.search.map.geodesy_calls()
    }

    /// Verifies the lookahead and queue invariants; meant for tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        self.search.check_invariants()
    }
}
