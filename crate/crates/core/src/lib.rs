//! Exact-rational finite metric geometry.
//!
//! The crate models finite metric spaces with rational distances and the
//! calculus of Katetov functions over them, and builds on that to produce
//! finite approximants of the Urysohn sphere, landmark approximations of the
//! weak uniformity, exact witnesses for sphere and `L^p` computations, and a
//! concrete model of the Rado graph.
//!
//! Runnable examples live in `examples/`; `cargo run --example <name>`.

pub mod banach;
pub mod cli;
pub mod error;
pub mod grid;
pub mod io;
pub mod katetov;
pub mod metric;
pub mod rado;
pub mod random;
pub mod rational;
pub mod report;
pub mod suite;
pub mod urysohn;
pub mod weak;

pub use error::{Error, Result};
pub use katetov::{KatetovFn, Truncation};
pub use metric::{Check, MetricSpace, MetricViolation, PartialIsometry};
pub use rational::{int, rat, Rational};
pub use report::{Verdict, WitnessReport};
