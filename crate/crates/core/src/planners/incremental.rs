//! The incremental search shared by LPA* and D* Lite.
//!
//! Costs grow from `origin` (`rhs(origin) = 0`) towards `target`; keys are
//! `[min(g, rhs) + h(s, target) + km, min(g, rhs)]`. LPA* uses
//! origin = start, target = goal and `km = 0`. D* Lite uses origin = goal,
//! target = start, and lets the target move while accumulating `km`.
//!
//! Between public operations the queue holds exactly the locally
//! inconsistent vertices. Queued keys may be stale after the target moves;
//! they are refreshed when they reach the top of the queue.
//!
//! A geodesy error aborts an operation midway; the session is unusable
//! afterwards.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cost::Cost;
use crate::graph::CityId;
use crate::toolbox::{
    extract_route, Direction, KeyedQueue, PlanError, PlannerMap, PriorityKey, Route,
};

#[derive(Debug, Clone)]
pub(crate) struct IncrementalSearch<'db> {
    pub(crate) map: PlannerMap<'db>,
    pub(crate) queue: KeyedQueue,
    pub(crate) origin: CityId,
    pub(crate) target: CityId,
    pub(crate) km: Cost,
    pub(crate) expansions: u64,
    pub(crate) rekeys: u64,
    /// True when the search grows from the goal (D* Lite).
    reverse: bool,
}

impl<'db> IncrementalSearch<'db> {
    pub(crate) fn new(
        mut map: PlannerMap<'db>,
        origin: CityId,
        target: CityId,
        reverse: bool,
    ) -> Result<Self, PlanError> {
        for id in [origin, target] {
            if map.is_blocked(id) {
                return Err(PlanError::EndpointBlockage(map.name(id).into()));
            }
        }
        map.protect(&[origin, target]);
        map.materialize(origin).rhs = Cost::ZERO;
        map.materialize(target);
        let mut search = IncrementalSearch {
            map,
            queue: KeyedQueue::new(),
            origin,
            target,
            km: Cost::ZERO,
            expansions: 0,
            rekeys: 0,
            reverse,
        };
        let key = search.key(origin)?;
        search.queue.insert(key)?;
        Ok(search)
    }

    pub(crate) fn start(&self) -> CityId {
        if self.reverse {
            self.target
        } else {
            self.origin
        }
    }

    pub(crate) fn goal(&self) -> CityId {
        if self.reverse {
            self.origin
        } else {
            self.target
        }
    }

    fn costs(&mut self, id: CityId) -> (Cost, Cost) {
        let v = self.map.materialize(id);
        (v.g, v.rhs)
    }

    pub(crate) fn key(&mut self, id: CityId) -> Result<PriorityKey, PlanError> {
        let h = self.map.heuristic(id, self.target)?;
        let v = self.map.materialize(id);
        v.h = Some(h);
        let m = v.g.min(v.rhs);
        Ok(PriorityKey::new(m + h + self.km, m, id))
    }

    /// Queues `id` with a fresh key when inconsistent, dequeues it otherwise.
    fn sync_queue(&mut self, id: CityId) -> Result<(), PlanError> {
        let (g, rhs) = self.costs(id);
        if g != rhs {
            let key = self.key(id)?;
            self.queue.update(key);
        } else {
            self.queue.remove(id);
        }
        Ok(())
    }

    /// Best one-step lookahead of `id` over its unblocked neighbors.
    fn recompute_rhs(&mut self, id: CityId) -> Result<(), PlanError> {
        let mut best = (Cost::INFINITE, None);
        if id == self.origin {
            best.0 = Cost::ZERO;
        } else if !self.map.is_blocked(id) {
            for &n in self.map.neighbors(id) {
                if self.map.is_blocked(n) {
                    continue;
                }
                // unmaterialized and unreached neighbors cannot help, and
                // skipping them avoids solving their edges
                let Some(g_n) = self.map.vertex(n).map(|v| v.g).filter(|g| g.is_finite()) else {
                    continue;
                };
                let candidate = g_n + self.map.edge_cost(n, id)?;
                if candidate < best.0 {
                    best = (candidate, Some(n));
                }
            }
        }
        let v = self.map.materialize(id);
        v.rhs = best.0;
        v.back = best.1;
        Ok(())
    }

    fn recompute(&mut self, id: CityId) -> Result<(), PlanError> {
        self.recompute_rhs(id)?;
        self.sync_queue(id)
    }

    /// Recomputes every materialized neighbor of `u` whose lookahead ran through `u`.
    fn repair_dependents(&mut self, u: CityId) -> Result<(), PlanError> {
        for &n in self.map.neighbors(u) {
            if n == self.origin {
                continue;
            }
            if self.map.vertex(n).is_some_and(|v| v.back == Some(u)) {
                self.recompute(n)?;
            }
        }
        Ok(())
    }

    fn relax_from(&mut self, u: CityId, g_u: Cost) -> Result<(), PlanError> {
        for &n in self.map.neighbors(u) {
            if n == self.origin || self.map.is_blocked(n) {
                continue;
            }
            let candidate = g_u + self.map.edge_cost(u, n)?;
            let v = self.map.materialize(n);
            if candidate < v.rhs {
                v.rhs = candidate;
                v.back = Some(u);
                self.sync_queue(n)?;
            }
        }
        Ok(())
    }

    fn must_continue(&mut self) -> Result<bool, PlanError> {
        let (g, rhs) = self.costs(self.target);
        if g != rhs {
            return Ok(true);
        }
        let Some(top) = self.queue.peek_min() else {
            return Ok(false);
        };
        let top = top.rank();
        Ok(top < self.key(self.target)?.rank())
    }

    pub(crate) fn compute(&mut self) -> Result<Route, PlanError> {
        while self.must_continue()? {
            let Some(top) = self.queue.peek_min() else {
                break;
            };
            let u = top.owner;
            let stale = top.rank();
            let fresh = self.key(u)?;
            if stale < fresh.rank() {
                self.queue.update(fresh);
                self.rekeys += 1;
                continue;
            }
            self.queue.remove(u);
            self.expansions += 1;
            let (g, rhs) = self.costs(u);
            if g > rhs {
                self.map.materialize(u).g = rhs;
                self.relax_from(u, rhs)?;
            } else {
                self.map.materialize(u).g = Cost::INFINITE;
                self.recompute(u)?;
                self.repair_dependents(u)?;
            }
        }

        if self.costs(self.target).0.is_infinite() {
            return Err(PlanError::NoRoute {
                start: self.map.name(self.start()).into(),
                goal: self.map.name(self.goal()).into(),
            });
        }
        if self.reverse {
            extract_route(&self.map, self.target, self.origin, Direction::Reverse)
        } else {
            extract_route(&self.map, self.origin, self.target, Direction::Forward)
        }
    }

    /// Applies a batch of blockage changes. Nothing is changed when any entry
    /// names a current endpoint.
    pub(crate) fn apply_blockage(&mut self, changes: &[(CityId, bool)]) -> Result<(), PlanError> {
        for &(id, blocked) in changes {
            if blocked && (id == self.origin || id == self.target) {
                return Err(PlanError::EndpointBlockage(self.map.name(id).into()));
            }
        }
        for &(id, blocked) in changes {
            let report = self.map.set_blockage(id, blocked)?;
            if !report.changed {
                continue;
            }
            if blocked {
                if report.vertex.is_none() {
                    continue;
                }
                let v = self.map.materialize(id);
                v.g = Cost::INFINITE;
                v.rhs = Cost::INFINITE;
                v.back = None;
                self.queue.remove(id);
                self.repair_dependents(id)?;
            } else {
                self.recompute(id)?;
            }
        }
        Ok(())
    }

    /// Moves the target, raising `km` by the heuristic between the old and new
    /// positions so that queued keys stay lower bounds.
    pub(crate) fn move_target(&mut self, to: CityId) -> Result<(), PlanError> {
        if self.map.is_blocked(to) {
            return Err(PlanError::EndpointBlockage(self.map.name(to).into()));
        }
        self.km = self.km + self.map.heuristic(self.target, to)?;
        self.target = to;
        self.map.protect(&[self.origin, to]);
        self.map.materialize(to);
        Ok(())
    }

    /// Drops `km` and recomputes every queued key against the current target.
    pub(crate) fn rekey_all(&mut self) -> Result<(), PlanError> {
        self.km = Cost::ZERO;
        let owners: Vec<CityId> = self.queue.iter().map(|k| k.owner).collect();
        for id in owners {
            let key = self.key(id)?;
            self.queue.update(key);
        }
        Ok(())
    }

    /// Checks the lookahead, backpointer and queue invariants, describing the
    /// first violation found.
    pub(crate) fn check_invariants(&self) -> Result<(), String> {
        let name = |id: CityId| self.map.name(id);
        for v in self.map.vertices() {
            let mut expected = Cost::INFINITE;
            if v.id == self.origin {
                expected = Cost::ZERO;
            } else if !self.map.is_blocked(v.id) {
                for &n in self.map.neighbors(v.id) {
                    let Some(nv) = self.map.vertex(n) else { continue };
                    if self.map.is_blocked(n) || nv.g.is_infinite() {
                        continue;
                    }
                    let c = self
                        .map
                        .cached_edge(n, v.id)
                        .ok_or_else(|| format!("edge {}-{} never solved", name(n), v.name))?;
                    expected = expected.min(nv.g + c);
                }
            }
            if v.rhs != expected {
                return Err(format!("rhs({}) = {} but lookahead is {}", v.name, v.rhs, expected));
            }
            if let Some(b) = v.back {
                let bv = self.map.vertex(b).ok_or_else(|| format!("back({}) unknown", v.name))?;
                let via = self.map.cached_edge(b, v.id).map(|c| bv.g + c);
                if via != Some(v.rhs) {
                    return Err(format!("back({}) = {} is not the argmin", v.name, bv.name));
                }
            } else if v.rhs.is_finite() && v.id != self.origin {
                return Err(format!("{} has finite rhs but no backpointer", v.name));
            }
            let queued = self.queue.key_of(v.id);
            match (v.is_consistent(), queued) {
                (true, Some(_)) => return Err(format!("consistent {} is queued", v.name)),
                (false, None) => return Err(format!("inconsistent {} is not queued", v.name)),
                (false, Some(k)) => {
                    let h = v.h.ok_or_else(|| format!("{} queued without heuristic", v.name))?;
                    let m = v.g.min(v.rhs);
                    if k.secondary != m || k.primary > m + h + self.km {
                        return Err(format!("key of {} is not a valid lower bound", v.name));
                    }
                }
                (true, None) => {}
            }
        }
        if self.queue.iter().any(|k| !self.map.contains(k.owner)) {
            return Err("queue holds an unmaterialized vertex".into());
        }
        Ok(())
    }
}
