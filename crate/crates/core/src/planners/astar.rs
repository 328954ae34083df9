use alloc::vec::Vec;

use super::resolve_all;
use crate::cost::Cost;
use crate::geodesy::Ellipsoid;
use crate::graph::{CityId, GraphDatabase};
use crate::toolbox::{
    extract_route, Direction, KeyedQueue, PlanError, PlannerMap, PriorityKey, Route, Status,
};

/// One from-scratch A* search.
///
/// The queue is ordered by `f = g + h` with ties broken by `g`. Expanded
/// vertices are closed and never reopened, which is sound because the
/// geodesic heuristic is consistent.
#[derive(Debug, Clone)]
pub struct AStarSession<'db> {
    map: PlannerMap<'db>,
    queue: KeyedQueue,
    start: CityId,
    goal: CityId,
    expansions: u64,
}

impl<'db> AStarSession<'db> {
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
        Ok(AStarSession {
            map,
            queue: KeyedQueue::new(),
            start,
            goal,
            expansions: 0,
        })
    }

    pub fn map(&self) -> &PlannerMap<'db> {
        &self.map
    }

    pub fn expansions(&self) -> u64 {
        self.expansions
    }

    pub fn geodesy_calls(&self) -> u64 {
        self.map.geodesy_calls()
    }

    /// Runs the search to completion.
    pub fn run(&mut self) -> Result<Route, PlanError> {
        let (start, goal) = (self.start, self.goal);
        let h_start = self.map.heuristic(start, goal)?;
        let s = self.map.materialize(start);
        s.g = Cost::ZERO;
        s.h = Some(h_start);
        s.status = Status::Open;
        self.queue.insert(PriorityKey::new(h_start, Cost::ZERO, start))?;
        if goal != start {
            let gx = self.map.materialize(goal);
            gx.h = Some(Cost::ZERO);
            gx.status = Status::Open;
            self.queue
                .insert(PriorityKey::new(Cost::INFINITE, Cost::INFINITE, goal))?;
        }

        loop {
            let Ok(top) = self.queue.pop_min() else {
                return Err(self.no_route());
            };
            let u = top.owner;
            let g_u = self.map.materialize(u).g;
            if g_u.is_infinite() {
                return Err(self.no_route());
            }
            self.map.materialize(u).status = Status::Closed;
            self.expansions += 1;
            // On the goal this is the final neighbor update before stopping.
            self.relax_neighbors(u, g_u)?;
            if u == goal {
                break;
            }
        }
        extract_route(&self.map, start, goal, Direction::Forward)
    }

    fn relax_neighbors(&mut self, u: CityId, g_u: Cost) -> Result<(), PlanError> {
        let neighbors: Vec<CityId> = self.map.neighbors(u).to_vec();
        for n in neighbors {
            if self.map.is_blocked(n) {
                continue;
            }
            if self.map.materialize(n).status == Status::Closed {
                continue;
            }
            let tentative = g_u + self.map.edge_cost(u, n)?;
            if tentative < self.map.materialize(n).g {
                let h = match self.map.materialize(n).h {
                    Some(h) => h,
                    None => self.map.heuristic(n, self.goal)?,
                };
                let v = self.map.materialize(n);
                v.g = tentative;
                v.h = Some(h);
                v.back = Some(u);
                v.status = Status::Open;
                self.queue.update(PriorityKey::new(tentative + h, tentative, n));
            }
        }
        Ok(())
    }

    fn no_route(&self) -> PlanError {
        PlanError::NoRoute {
            start: self.map.name(self.start).into(),
            goal: self.map.name(self.goal).into(),
        }
    }
}

/// Plans a route from scratch, avoiding the `blocked` cities.
pub fn astar_plan(
    db: &GraphDatabase,
    ellipsoid: Ellipsoid,
    start: &str,
    goal: &str,
    blocked: &[&str],
) -> Result<Route, PlanError> {
    AStarSession::new(db, ellipsoid, start, goal, blocked)?.run()
}
