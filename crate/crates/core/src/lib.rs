//! Core library for the Coalition Formation with Spatial and Temporal
//! constraints Problem (CFSTP): few agents, many tasks, each task with a
//! location, a deadline and a workload, and coalition values that say how
//! fast a group of agents works a task down.
//!
//! The crate is split along the problem's natural seams:
//!
//! - [`model`]: immutable problem instances (tasks, agents, locations,
//!   travel metric, coalition-value distribution).
//! - [`value`]: seeded coalition-value generation with memoization.
//! - [`solver`]: the binary-program constraint validator and a brute-force
//!   optimal solver for desk-scale instances, used as the oracle everywhere.
//! - [`dyndcop`]: the per-tick DCOP view (factor-graph snapshot, domains,
//!   earliest-completion cost evaluation).
//! - [`dcts`]: the two-phase distributed scheduler over variable and factor
//!   nodes exchanging `assignable`/`allocate` messages.
//! - [`dsa`]: the stochastic local-search baseline over the same per-tick
//!   decomposition.
//! - [`scenario`]: incident records, synthetic record generation, problem
//!   slicing and agent-degradation schedules.
//! - [`sim`]: the synchronous discrete-time engine with message, byte and
//!   NCCC accounting.
//!
//! The crate is `no_std`-compatible (with `alloc`); file formats, the CLI
//! and the experiment harness live in the companion `cfstp-harness` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod coalition;
pub mod dcts;
pub mod dsa;
pub mod dyndcop;
pub mod model;
pub mod scenario;
pub mod seeding;
pub mod sim;
pub mod solver;
pub mod value;

pub use coalition::Coalition;
pub use model::{Agent, AgentId, GeoPoint, Instance, LocationId, Task, TaskId, Tick, TravelMetric};


pub use value::{ValueCache, ValueModel};
