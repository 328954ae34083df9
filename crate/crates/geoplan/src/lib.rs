//! File formats, the benchmark harness and the command-line front end for
//! [`geoplan_core`].

pub mod experiments;
pub mod formats;

pub use geoplan_core;
