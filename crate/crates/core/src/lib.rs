//! Robust (minimax) shortest paths on finite graphs with set-membership
//! successor uncertainty.
//!
//! At each node `x` the planner picks a control `u`; an adversary then picks
//! the next node from `Y(x,u)`. The planner wants a policy that reaches the
//! destination `t` with least worst-case total length.
//!
//! Everything is generic over [`Scalar`]. [`Exact`] (64-bit rationals) is the
//! default for tests and the CLI; `f64` works with a `1e-9` comparison slack.

pub mod bellman;
pub mod cost;
pub mod dijkstra;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod perturbation;
pub mod pi;
pub mod policy_eval;
pub mod rollout;
pub mod scalar;
pub mod schedule;
pub mod vi;

pub use cost::{Cost, CostVector};
pub use error::RspError;
pub use graph::{Node, Policy, RspGraph};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Exact = num_rational::Rational64;
pub type ExactGraph = RspGraph<Exact>;
pub type ExactCosts = CostVector<Exact>;
pub type FloatGraph = RspGraph<f64>;
pub type FloatCosts = CostVector<f64>;

pub type Result<T> = std::result::Result<T, RspError>;
