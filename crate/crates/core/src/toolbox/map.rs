use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::PlanError;
use crate::cost::Cost;
use crate::geodesy::{self, Ellipsoid, GeodesyError, GeographicCoordinate};
use crate::graph::{CityId, GraphDatabase};

/// Neighbor entry with its lazily computed geodesic length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CachedAdjacency {
    pub id: CityId,
    pub dist: Option<Cost>,
}

/// A* open/closed bookkeeping. Unused by the incremental planners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Status {
    #[default]
    Untouched,
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerVertex<'db> {
    pub id: CityId,
    pub name: &'db str,
    pub coord: GeographicCoordinate,
    pub blocked: bool,
    /// Traversal cost from the search origin.
    pub g: Cost,
    /// One-step lookahead of `g` (LPA* and D* Lite).
    pub rhs: Cost,
    /// Heuristic towards the current anchor, once computed.
    pub h: Option<Cost>,
    pub status: Status,
    pub back: Option<CityId>,
    pub adjacents: Vec<CachedAdjacency>,
}

impl PlannerVertex<'_> {
    pub fn is_consistent(&self) -> bool {
        self.g == self.rhs
    }
}

/// Vertices whose costs a planner has to revisit after a blockage change.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlockageReport {
    /// The changed vertex, when it is materialized.
    pub vertex: Option<CityId>,
    /// Its materialized neighbors.
    pub neighbors: Vec<CityId>,
    /// False when the flag already had the requested value.
    pub changed: bool,
}

/// One planner's private, lazily built view of the database.
///
/// Geodesic lengths are cached per unordered city pair for the lifetime of
/// the map, whether they were requested as edge costs or as heuristics, so
/// [`PlannerMap::geodesy_calls`] grows at most once per pair.
#[derive(Debug, Clone)]
pub struct PlannerMap<'db> {
    db: &'db GraphDatabase,
    ellipsoid: Ellipsoid,
    vertices: BTreeMap<CityId, PlannerVertex<'db>>,
    blocked: BTreeSet<CityId>,
    protected: Vec<CityId>,
    distances: BTreeMap<(CityId, CityId), Cost>,
    geodesy_calls: u64,
}

impl<'db> PlannerMap<'db> {
    pub fn new(db: &'db GraphDatabase, ellipsoid: Ellipsoid) -> Self {
        PlannerMap {
            db,
            ellipsoid,
            vertices: BTreeMap::new(),
            blocked: BTreeSet::new(),
            protected: Vec::new(),
            distances: BTreeMap::new(),
            geodesy_calls: 0,
        }
    }

    pub fn db(&self) -> &'db GraphDatabase {
        self.db
    }

    pub fn ellipsoid(&self) -> &Ellipsoid {
        &self.ellipsoid
    }

    /// Number of inverse geodesic solutions computed by this map.
    pub fn geodesy_calls(&self) -> u64 {
        self.geodesy_calls
    }

    /// Distinct city pairs whose distance is cached.
    pub fn solved_pairs(&self) -> usize {
        self.distances.len()
    }

    pub fn resolve(&self, name: &str) -> Result<CityId, PlanError> {
        self.db
            .id(name)
            .ok_or_else(|| PlanError::NotFound(name.into()))
    }

    pub fn name(&self, id: CityId) -> &'db str {
        self.db.record(id).name()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: CityId) -> bool {
        self.vertices.contains_key(&id)
    }

    pub fn vertex(&self, id: CityId) -> Option<&PlannerVertex<'db>> {
        self.vertices.get(&id)
    }

    pub fn vertex_mut(&mut self, id: CityId) -> Option<&mut PlannerVertex<'db>> {
        self.vertices.get_mut(&id)
    }

    /// Materialized vertices in name order.
    pub fn vertices(&self) -> impl Iterator<Item = &PlannerVertex<'db>> + '_ {
        self.vertices.values()
    }

    /// Inserts `id` with infinite costs and uncomputed distances, or returns
    /// the existing vertex untouched.
    pub fn materialize(&mut self, id: CityId) -> &mut PlannerVertex<'db> {
        let db = self.db;
        let blocked = self.blocked.contains(&id);
        self.vertices.entry(id).or_insert_with(|| {
            let record = db.record(id);
            PlannerVertex {
                id,
                name: record.name(),
                coord: record.coord(),
                blocked,
                g: Cost::INFINITE,
                rhs: Cost::INFINITE,
                h: None,
                status: Status::Untouched,
                back: None,
                adjacents: record
                    .adjacent_ids()
                    .iter()
                    .map(|&id| CachedAdjacency { id, dist: None })
                    .collect(),
            }
        })
    }

    pub fn materialize_by_name(&mut self, name: &str) -> Result<&PlannerVertex<'db>, PlanError> {
        let id = self.resolve(name)?;
        Ok(self.materialize(id))
    }

    pub fn neighbors(&self, id: CityId) -> &'db [CityId] {
        self.db.record(id).adjacent_ids()
    }

    fn distance(&mut self, u: CityId, v: CityId) -> Result<Cost, GeodesyError> {
        if u == v {
            return Ok(Cost::ZERO);
        }
        let pair = if u < v { (u, v) } else { (v, u) };
        if let Some(&d) = self.distances.get(&pair) {
            return Ok(d);
        }
        let (p, q) = (self.db.record(pair.0).coord(), self.db.record(pair.1).coord());
        self.geodesy_calls += 1;
        let d = match geodesy::inverse(p, q, &self.ellipsoid) {
            Ok(sol) => Cost::new(sol.s12),
            Err(GeodesyError::CoincidentPoints) => Cost::ZERO,
            Err(e) => return Err(e),
        };
        self.distances.insert(pair, d);
        Ok(d)
    }

    /// Cached geodesic length of the edge `u`-`v`, if it has been computed.
    pub fn cached_edge(&self, u: CityId, v: CityId) -> Option<Cost> {
        let pair = if u < v { (u, v) } else { (v, u) };
        self.distances
            .get(&pair)
            .copied()
            .filter(|_| self.db.record(u).adjacent_ids().binary_search(&v).is_ok())
    }

    /// Geodesic length of the edge `u`-`v`, solving at most once per map and
    /// filling the adjacency slots at both ends. Blockage is not considered.
    pub fn edge_cost(&mut self, u: CityId, v: CityId) -> Result<Cost, PlanError> {
        let adjacent = self.db.record(u).adjacent_ids().binary_search(&v);
        let Ok(slot) = adjacent else {
            return Err(PlanError::NotAdjacent(self.name(u).into(), self.name(v).into()));
        };
        if let Some(d) = self.vertices.get(&u).and_then(|x| x.adjacents[slot].dist) {
            return Ok(d);
        }
        let d = self.distance(u, v)?;
        self.materialize(u).adjacents[slot].dist = Some(d);
        if let Some(vx) = self.vertices.get_mut(&v) {
            if let Some(entry) = vx.adjacents.iter_mut().find(|a| a.id == u) {
                entry.dist = Some(d);
            }
        }
        Ok(d)
    }

    /// Edge cost as seen by a planner: infinite when either end is blocked.
    pub fn traversal_cost(&mut self, u: CityId, v: CityId) -> Result<Cost, PlanError> {
        if self.is_blocked(u) || self.is_blocked(v) {
            return Ok(Cost::INFINITE);
        }
        self.edge_cost(u, v)
    }

    /// Geodesic distance from `v` to `anchor`; zero when they coincide.
    pub fn heuristic(&mut self, v: CityId, anchor: CityId) -> Result<Cost, PlanError> {
        Ok(self.distance(v, anchor)?)
    }

    pub fn is_blocked(&self, id: CityId) -> bool {
        self.blocked.contains(&id)
    }

    pub fn blocked(&self) -> impl Iterator<Item = CityId> + '_ {
        self.blocked.iter().copied()
    }

    /// Marks vertices that may not be blocked (the current endpoints).
    pub fn protect(&mut self, endpoints: &[CityId]) {
        self.protected.clear();
        self.protected.extend_from_slice(endpoints);
    }

    pub fn set_blockage(&mut self, id: CityId, blocked: bool) -> Result<BlockageReport, PlanError> {
        if blocked && self.protected.contains(&id) {
            return Err(PlanError::EndpointBlockage(self.name(id).into()));
        }
        let changed = if blocked {
            self.blocked.insert(id)
        } else {
            self.blocked.remove(&id)
        };
        let Some(vx) = self.vertices.get_mut(&id) else {
            return Ok(BlockageReport {
                vertex: None,
                neighbors: Vec::new(),
                changed,
            });
        };
        vx.blocked = blocked;
        let neighbors = self
            .neighbors(id)
            .iter()
            .copied()
            .filter(|n| self.vertices.contains_key(n))
            .collect();
        Ok(BlockageReport {
            vertex: Some(id),
            neighbors,
            changed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_database;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn db() -> GraphDatabase {
        let coords = [
            ("A", -3.1, -60.0),
            ("B", -1.5, -61.2),
            ("C", -4.8, -61.0),
            ("D", -4.5, -58.4),
            ("J", -2.4, -58.1),
        ];
        let conns: [(&str, &[&str]); 5] = [
            ("A", &["B", "C", "D", "J"]),
            ("B", &["A"]),
            ("C", &["A"]),
            ("D", &["A", "J"]),
            ("J", &["A", "D"]),
        ];
        build_database(
            coords
                .iter()
                .map(|&(n, la, lo)| (n.to_string(), GeographicCoordinate::new(la, lo).unwrap()))
                .collect(),
            conns
                .iter()
                .map(|(n, a)| (n.to_string(), a.iter().map(|s| s.to_string()).collect::<Vec<String>>()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn materialize_is_idempotent() {
        let db = db();
        let mut map = PlannerMap::new(&db, Ellipsoid::WGS84);
        let a = map.resolve("A").unwrap();
        let v = map.materialize(a);
        assert_eq!(v.adjacents.len(), 4);
        assert!(v.adjacents.iter().all(|x| x.dist.is_none()));
        assert_eq!(v.g, Cost::INFINITE);
        v.g = Cost::new(5.0);
        assert_eq!(map.materialize(a).g, Cost::new(5.0));
        assert_eq!(map.len(), 1);
        assert!(matches!(
            map.materialize_by_name("Q"),
            Err(PlanError::NotFound(_))
        ));
    }

    #[test]
    fn edge_cost_is_cached_both_ways() {
        let db = db();
        let mut map = PlannerMap::new(&db, Ellipsoid::WGS84);
        let (a, d) = (map.resolve("A").unwrap(), map.resolve("D").unwrap());
        map.materialize(a);
        map.materialize(d);
        let first = map.edge_cost(a, d).unwrap();
        assert_eq!(map.geodesy_calls(), 1);
        assert_eq!(map.edge_cost(a, d).unwrap(), first);
        assert_eq!(map.edge_cost(d, a).unwrap(), first);
        assert_eq!(map.geodesy_calls(), 1);
        let slot = map.vertex(d).unwrap().adjacents.iter().find(|x| x.id == a).unwrap();
        assert_eq!(slot.dist, Some(first));
        assert!(matches!(map.edge_cost(a, a), Err(PlanError::NotAdjacent(..))));
    }

    #[test]
    fn heuristic_shares_the_pair_cache() {
        let db = db();
        let mut map = PlannerMap::new(&db, Ellipsoid::WGS84);
        let (a, j) = (map.resolve("A").unwrap(), map.resolve("J").unwrap());
        assert_eq!(map.heuristic(j, j).unwrap(), Cost::ZERO);
        assert_eq!(map.geodesy_calls(), 0);
        let h = map.heuristic(a, j).unwrap();
        assert_eq!(map.edge_cost(j, a).unwrap(), h);
        assert_eq!(map.geodesy_calls(), 1);
    }

    #[test]
    fn blockage_reports() {
        let db = db();
        let mut map = PlannerMap::new(&db, Ellipsoid::WGS84);
        let [a, b, c, d, j] = ["A", "B", "C", "D", "J"].map(|n| map.resolve(n).unwrap());
        map.protect(&[b, c]);

        let r = map.set_blockage(j, true).unwrap();
        assert_eq!(r, BlockageReport { vertex: None, neighbors: vec![], changed: true });
        assert!(map.is_blocked(j));
        assert!(map.materialize(j).blocked);

        map.materialize(a);
        map.materialize(d);
        let r = map.set_blockage(d, true).unwrap();
        assert_eq!(r.vertex, Some(d));
        assert_eq!(r.neighbors, vec![a, j]);
        assert_eq!(map.traversal_cost(a, d).unwrap(), Cost::INFINITE);

        assert!(matches!(map.set_blockage(b, true), Err(PlanError::EndpointBlockage(_))));
        let r = map.set_blockage(d, false).unwrap();
        assert!(r.changed);
        assert!(map.traversal_cost(a, d).unwrap().is_finite());
    }
}
