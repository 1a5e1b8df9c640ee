//! Capacity computation and scheduling for half-duplex 1-2-1 relay networks.
//!
//! A 1-2-1 network connects a source to a destination through `N` relays;
//! every node carries one transmit beam and one receive beam, and a link is
//! live only while its two endpoints point beams at each other. Half-duplex
//! nodes transmit or receive, never both. The approximate capacity of such a
//! network is the schedule-optimized min-cut, and this crate computes it in
//! polynomial time together with an explicit optimal schedule:
//!
//! 1. [`capacity::solve_p1`] solves the link-activation linear program by
//!    constraint generation, using [`matchpoly::separation_oracle`] (matching
//!    polytope odd-set separation via a doubled graph and a Gomory-Hu tree)
//!    to supply violated rows.
//! 2. [`scheduler::caratheodory_decompose`] rewrites the optimal connection
//!    activations as a convex combination of matchings, and
//!    [`scheduler::directionalize`] orients those matchings into concrete
//!    network states with activation fractions.
//! 3. [`refcheck`] holds exponential-time reference oracles that certify the
//!    fast path on small instances.

pub mod capacity;
pub mod error;
pub mod flowgraph;
pub mod matchpoly;
pub mod netmodel;
pub mod refcheck;
pub mod scheduler;

mod blossom;
mod simplex;

pub use error::{Error, Result};

/// Feasibility tolerance used for all constraint comparisons unless a caller
/// overrides it.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
