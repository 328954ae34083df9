#![allow(dead_code)]

use std::collections::BTreeSet;

use geoplan_core::geodesy::inverse;
use geoplan_core::graph::build_database;
use geoplan_core::{CityId, Cost, Ellipsoid, GeographicCoordinate, GraphDatabase, Route};

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

pub fn load(coords: &str, conns: &str) -> GraphDatabase {
    let coords = lines(coords)
        .map(|l| {
            let f: Vec<&str> = l.split(';').collect();
            let c = GeographicCoordinate::new(f[1].parse().unwrap(), f[2].parse().unwrap());
            (f[0].to_string(), c.unwrap())
        })
        .collect();
    let conns = lines(conns)
        .map(|l| {
            let (name, adj) = l.split_once(';').unwrap();
            let adj = adj
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect();
            (name.to_string(), adj)
        })
        .collect();
    build_database(coords, conns).unwrap()
}

pub fn fig1a() -> GraphDatabase {
    load(
        include_str!("../../../../data/fig1a_coordinates.txt"),
        include_str!("../../../../data/fig1a_connections.txt"),
    )
}

pub fn fig1b() -> GraphDatabase {
    load(
        include_str!("../../../../data/fig1b_coordinates.txt"),
        include_str!("../../../../data/fig1b_connections.txt"),
    )
}

pub fn world() -> GraphDatabase {
    load(
        include_str!("../../../../data/cities.txt"),
        include_str!("../../../../data/connections.txt"),
    )
}

pub fn edge(db: &GraphDatabase, u: CityId, v: CityId) -> f64 {
    inverse(db.record(u).coord(), db.record(v).coord(), &Ellipsoid::WGS84)
        .unwrap()
        .s12
}

/// All-pairs shortest costs by Floyd-Warshall, with `blocked` cities removed.
pub struct Oracle {
    n: usize,
    dist: Vec<f64>,
}

impl Oracle {
    pub fn new(db: &GraphDatabase, blocked: &BTreeSet<CityId>) -> Self {
        let n = db.len();
        let mut dist = vec![f64::INFINITY; n * n];
        for u in db.ids() {
            dist[u.index() * n + u.index()] = 0.0;
        }
        for (u, v) in db.edges() {
            if blocked.contains(&u) || blocked.contains(&v) {
                continue;
            }
            let d = edge(db, u, v);
            dist[u.index() * n + v.index()] = d;
            dist[v.index() * n + u.index()] = d;
        }
        for k in 0..n {
            for i in 0..n {
                let ik = dist[i * n + k];
                if ik.is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let via = ik + dist[k * n + j];
                    if via < dist[i * n + j] {
                        dist[i * n + j] = via;
                    }
                }
            }
        }
        Oracle { n, dist }
    }

    pub fn cost(&self, u: CityId, v: CityId) -> Option<f64> {
        let d = self.dist[u.index() * self.n + v.index()];
        d.is_finite().then_some(d)
    }
}

/// Adjacency, blockage and cost-sum checks on a planner's route.
pub fn assert_valid_route(
    db: &GraphDatabase,
    route: &Route,
    start: &str,
    goal: &str,
    blocked: &BTreeSet<CityId>,
) {
    let names = route.names();
    assert_eq!(names.first(), Some(&start));
    assert_eq!(names.last(), Some(&goal));
    let ids: Vec<CityId> = names.iter().map(|n| db.id(n).unwrap()).collect();
    let mut sum = 0.0;
    for w in ids.windows(2) {
        assert!(db.record(w[0]).adjacent_ids().contains(&w[1]), "{names:?} not a path");
        sum += edge(db, w[0], w[1]);
    }
    for id in &ids {
        assert!(!blocked.contains(id), "{} is blocked", db.record(*id).name());
    }
    assert!((route.total_cost.meters() - sum).abs() <= 1e-6);
    let unique: BTreeSet<_> = ids.iter().collect();
    assert_eq!(unique.len(), ids.len(), "route revisits a city");
    assert_eq!(route.stops.last().unwrap().g, Some(route.total_cost));
    assert_eq!(route.stops[0].g, Some(Cost::ZERO));
}

pub fn assert_cost(route: &Route, expected: f64) {
    assert!(
        (route.total_cost.meters() - expected).abs() <= 1e-6,
        "route {} vs oracle {expected}",
        route.total_cost.meters()
    );
}
