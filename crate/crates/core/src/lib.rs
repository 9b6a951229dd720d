//! Perfect distinguishability and memory capacity of polyhedral general
//! probabilistic theories (GPTs).
//!
//! A polyhedral GPT is described by the generator rays of its cone, each
//! scaled onto the slice where the order unit equals one. On top of that
//! model this crate provides:
//!
//! * [`lp`]: exact rational simplex (plus a float backend) with Farkas
//!   certificates,
//! * [`gpt`]: theories, states, effects and measurements,
//! * [`theories`]: simplices, hypercubes, polygons and prism products,
//! * [`discrimination`]: optimal and perfect state discrimination,
//! * [`hypergraph`]: N-distinguishability hypergraphs and clique search,
//! * [`capacity`]: compression factors, hypercube memories and the random
//!   simplex-power construction,
//! * [`fixtures`]: named instances used throughout the tests and the CLI.

pub mod capacity;
pub mod discrimination;
mod error;
pub mod exec;
pub mod fixtures;
pub mod gpt;
pub mod hypergraph;
pub mod lp;
pub mod theories;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gpt::{AnyTheory, Measurement, Theory};
pub use lp::{Rational, Scalar};
