//! Ellipsoidal geodesics and incremental route planning over city graphs.
//!
//! The crate is `no_std` (it needs `alloc`) and carries the algorithmic part
//! of the project:
//!
//! - [`geodesy`] solves the inverse geodesic problem on an oblate ellipsoid
//!   with sixth-order series for the distance, longitude and reduced-length
//!   integrals and a Newton refinement of the departure azimuth.
//! - [`graph`] holds the immutable, alphabetically ordered city database.
//! - [`toolbox`] is the per-planner working state: lazily built vertex maps
//!   with cached geodesic edge costs, keyed priority queues and route
//!   extraction.
//! - [`planners`] implements A*, LPA* and D* Lite on top of the toolbox.
//!
//! File formats, the benchmark harness and the command-line front end live in
//! the `geoplan` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cost;
pub mod geodesy;
pub mod graph;
pub mod planners;
pub mod toolbox;

pub use cost::Cost;
pub use geodesy::{Ellipsoid, GeodesicSolution, GeodesyError, GeographicCoordinate};
pub use graph::{CityId, CityRecord, GraphDatabase, GraphError};
pub use planners::{astar_plan, AStarSession, DliteSession, LpaSession, PlanError};
pub use toolbox::{PlannerMap, PriorityKey, Route, RouteStop};
