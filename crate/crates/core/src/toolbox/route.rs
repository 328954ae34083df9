use alloc::string::String;
use alloc::vec::Vec;

use super::{PlanError, PlannerMap};
use crate::cost::Cost;
use crate::geodesy::GeographicCoordinate;
use crate::graph::CityId;

#[derive(Debug, Clone, PartialEq)]
pub struct RouteStop {
    pub name: String,
    pub coord: GeographicCoordinate,
    /// Cost accumulated from the first stop, when known.
    pub g: Option<Cost>,
}

/// An itinerary from start to goal.
#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    pub stops: Vec<RouteStop>,
    pub total_cost: Cost,
}

impl Route {
    pub fn names(&self) -> Vec<&str> {
        self.stops.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.stops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stops.is_empty()
    }
}

/// Which way the backpointers run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Search grew from `from`; backpointers lead from `to` back to `from`
    /// and the chain is reversed (A*, LPA*).
    Forward,
    /// Search grew from `to`; backpointers lead from `from` on to `to` and
    /// the chain is used as-is (D* Lite).
    Reverse,
}

/// Follows backpointers to build the route from `from` to `to`.
///
/// Fails with [`PlanError::BrokenChain`] on a cycle, a missing link, a
/// blocked stop, or an edge whose cost was never computed.
pub fn extract_route(
    map: &PlannerMap<'_>,
    from: CityId,
    to: CityId,
    direction: Direction,
) -> Result<Route, PlanError> {
    let (origin, target) = match direction {
        Direction::Forward => (to, from),
        Direction::Reverse => (from, to),
    };
    let broken = |id: CityId| PlanError::BrokenChain(map.name(id).into());

    let mut chain = Vec::from([origin]);
    let mut current = origin;
    while current != target {
        if chain.len() > map.db().len() {
            return Err(broken(current));
        }
        let vertex = map.vertex(current).ok_or_else(|| broken(current))?;
        current = vertex.back.ok_or_else(|| broken(current))?;
        chain.push(current);
    }
    if direction == Direction::Forward {
        chain.reverse();
    }

    let mut stops = Vec::with_capacity(chain.len());
    let mut total = Cost::ZERO;
    for (i, &id) in chain.iter().enumerate() {
        if map.is_blocked(id) {
            return Err(broken(id));
        }
        if i > 0 {
            total = total + map.cached_edge(chain[i - 1], id).ok_or_else(|| broken(id))?;
        }
        let record = map.db().record(id);
        stops.push(RouteStop {
            name: record.name().into(),
            coord: record.coord(),
            g: Some(total),
        });
    }
    Ok(Route {
        stops,
        total_cost: total,
    })
}
