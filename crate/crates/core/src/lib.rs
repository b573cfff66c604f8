//! Light configurations in sparse graphs.
//!
//! The crate detects bounded-degree paths, stars, cycles and thread profiles,
//! computes exact maximum average degree, replays discharging rule sets on
//! concrete instances and builds the extremal subdivision constructions that
//! show each unavoidable set is sharp. All arithmetic on densities and charges
//! is exact.

pub mod constructions;
pub mod density;
pub mod discharge;
mod error;
mod flow;
pub mod graph;
pub mod patterns;
pub mod plane;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::{Graph, Rational, Thread};
pub use patterns::{DegSpec, Pattern, Witness};
pub use plane::PlaneGraph;
pub use theorems::{Instance, TheoremSpec, Verdict};
