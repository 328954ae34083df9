//! Plain Dijkstra over the full graph, used to check the planners and to
//! generate benchmark scenarios. Edge costs come straight from the geodesic
//! solver, with no planner machinery in between.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use geoplan_core::geodesy::inverse;
use geoplan_core::{CityId, Cost, Ellipsoid, GeodesyError, GraphDatabase, PlanError, Route, RouteStop};

/// Every edge length of a database, solved once up front.
#[derive(Debug, Clone)]
pub struct EdgeCosts<'db> {
    db: &'db GraphDatabase,
    costs: BTreeMap<(CityId, CityId), f64>,
}

impl<'db> EdgeCosts<'db> {
    pub fn new(db: &'db GraphDatabase, ellipsoid: &Ellipsoid) -> Result<Self, GeodesyError> {
        let mut costs = BTreeMap::new();
        for (u, v) in db.edges() {
            let s = inverse(db.record(u).coord(), db.record(v).coord(), ellipsoid)?.s12;
            costs.insert((u, v), s);
        }
        Ok(EdgeCosts { db, costs })
    }

    pub fn db(&self) -> &'db GraphDatabase {
        self.db
    }

    pub fn get(&self, u: CityId, v: CityId) -> f64 {
        let key = if u < v { (u, v) } else { (v, u) };
        self.costs[&key]
    }
}

/// Minimum-cost route avoiding `blocked`, or [`PlanError::NoRoute`].
pub fn dijkstra(
    edges: &EdgeCosts<'_>,
    start: CityId,
    goal: CityId,
    blocked: &BTreeSet<CityId>,
) -> Result<Route, PlanError> {
    let db = edges.db();
    let no_route = || PlanError::NoRoute {
        start: db.record(start).name().into(),
        goal: db.record(goal).name().into(),
    };
    if blocked.contains(&start) || blocked.contains(&goal) {
        return Err(no_route());
    }
    let mut dist = vec![f64::INFINITY; db.len()];
    let mut prev: Vec<Option<CityId>> = vec![None; db.len()];
    let mut heap = BinaryHeap::new();
    dist[start.index()] = 0.0;
    heap.push(Reverse((Cost::ZERO, start)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d.meters() > dist[u.index()] {
            continue;
        }
        if u == goal {
            break;
        }
        for &v in db.record(u).adjacent_ids() {
            if blocked.contains(&v) {
                continue;
            }
            let nd = d.meters() + edges.get(u, v);
            if nd < dist[v.index()] {
                dist[v.index()] = nd;
                prev[v.index()] = Some(u);
                heap.push(Reverse((Cost::new(nd), v)));
            }
        }
    }
    if dist[goal.index()].is_infinite() {
        return Err(no_route());
    }
    let mut chain = vec![goal];
    while let Some(p) = prev[chain.last().unwrap().index()] {
        chain.push(p);
    }
    chain.reverse();
    let mut total = 0.0;
    let stops = chain
        .iter()
        .enumerate()
        .map(|(i, &id)| {
            if i > 0 {
                total += edges.get(chain[i - 1], id);
            }
            RouteStop {
                name: db.record(id).name().into(),
                coord: db.record(id).coord(),
                g: Some(Cost::new(total)),
            }
        })
        .collect();
    Ok(Route {
        stops,
        total_cost: Cost::new(total),
    })
}
