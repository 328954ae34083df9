//! Working state shared by the planners.
//!
//! Each planner owns a [`PlannerMap`]: a lazily grown copy of the part of the
//! [`GraphDatabase`](crate::graph::GraphDatabase) it has touched, with
//! per-vertex costs, a blockage flag, a backpointer and adjacency lists whose
//! geodesic lengths are computed at most once. A [`KeyedQueue`] orders the
//! vertices awaiting expansion, and [`extract_route`] turns a finished
//! backpointer chain into a [`Route`].

mod map;
mod queue;
mod route;

use alloc::string::String;
use core::fmt;

use crate::geodesy::GeodesyError;
use crate::graph::GraphError;

pub use map::{BlockageReport, CachedAdjacency, PlannerMap, PlannerVertex, Status};
pub use queue::{KeyedQueue, PriorityKey, QueueError};
pub use route::{extract_route, Direction, Route, RouteStop};

#[derive(Debug, Clone, PartialEq)]
pub enum PlanError {
    NotFound(String),
    NotAdjacent(String, String),
    /// A start or goal vertex was blocked, or a blocked vertex was chosen
    /// as an endpoint.
    EndpointBlockage(String),
    NoRoute { start: String, goal: String },
    /// Backpointers form a cycle, dead-end, or cross a blocked vertex.
    BrokenChain(String),
    Geodesy(GeodesyError),
    Queue(QueueError),
}

impl fmt::Display for PlanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanError::NotFound(n) => write!(f, "city not found: {n}"),
            PlanError::NotAdjacent(u, v) => write!(f, "{u} and {v} are not adjacent"),
            PlanError::EndpointBlockage(n) => {
                write!(f, "{n} is a route endpoint and cannot be blocked")
            }
            PlanError::NoRoute { start, goal } => write!(f, "no route from {start} to {goal}"),
            PlanError::BrokenChain(n) => write!(f, "broken backpointer chain at {n}"),
            PlanError::Geodesy(e) => write!(f, "geodesy: {e}"),
            PlanError::Queue(e) => write!(f, "queue: {e}"),
        }
    }
}

impl core::error::Error for PlanError {}

impl From<GeodesyError> for PlanError {
    fn from(e: GeodesyError) -> Self {
        PlanError::Geodesy(e)
    }
}

impl From<QueueError> for PlanError {
    fn from(e: QueueError) -> Self {
        PlanError::Queue(e)
    }
}

impl From<GraphError> for PlanError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotFound(n) => PlanError::NotFound(n),
            other => PlanError::NotFound(alloc::format!("{other}")),
        }
    }
}
