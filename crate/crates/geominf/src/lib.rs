//! Geometric influence analysis for product measures on R^n.
//!
//! The library measures how much each coordinate of a Borel set matters: the
//! influence of coordinate i is the expected one-dimensional lower Minkowski
//! content of the fiber of the set in direction i. For monotone and convex
//! sets the influence sum coincides with the boundary measure under uniform
//! (L-infinity cube) enlargement, which connects single-coordinate estimates
//! to isoperimetry, KKL/Talagrand-type inequalities, sharp thresholds of
//! increasing sets under location shifts, and the behaviour of influence sums
//! under random orthogonal rotation.
//!
//! Everything is Monte Carlo at desk scale with deterministic counter-based
//! sampling: estimates are pure functions of their seed, so experiments
//! reproduce bit-for-bit.
//!
//! The `examples/` directory demonstrates each capability end to end; the
//! `geominf` binary exposes the same experiments as subcommands emitting CSV
//! or JSON.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod influence;
pub mod interval;
pub mod linalg;
pub mod measure;
pub mod report;
pub mod rng;
pub mod rotation;
pub mod russo;
pub mod set;
pub mod special;

pub use error::{Error, Result};
pub use influence::{HProfile, InfluenceEstimate, InfluenceProfile};
pub use interval::{Interval, IntervalUnion};
pub use measure::{tail_bracket, Measure1D, ProductSpace};
pub use set::{McConfig, Monotonicity, SetDescriptor};

