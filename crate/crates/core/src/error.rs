use thiserror::Error;

use crate::graph::{Node, Violation};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RspError {
    #[error("indeterminate extended sum")]
    IndeterminateSum,

    #[error("invalid graph: {}", join(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("policy not proper")]
    PolicyNotProper,

    /// `reachable` lists the nodes from which some policy forces termination.
    #[error("no proper policy exists ({} of {n_nodes} nodes can force termination)", .reachable.len())]
    NoProperPolicy { n_nodes: usize, reachable: Vec<usize> },

    #[error("policy count {count} exceeds cap {cap}")]
    PolicyCapExceeded { count: u128, cap: u128 },

    #[error("oracle: no proper policy attains the per-node minimum at every node simultaneously")]
    NoSimultaneousMinimizer,

    #[error("no convergence within {sweeps} sweeps")]
    NotSettled { sweeps: usize },

    #[error("value iteration left node {node} at +inf")]
    UnreachableNode { node: Node },

    #[error("initial cost vector must be finite")]
    NonFiniteStart,

    #[error("improper policy generated at iteration {iteration}")]
    ImproperPolicyGenerated { iteration: usize },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("negative arc length at node {node}")]
    NegativeArc { node: Node },

    #[error("premature exhaustion: candidate set empty after {entered} of {total} nodes entered")]
    PrematureExhaustion { entered: usize, total: usize },

    #[error("candidate set is empty")]
    EmptyCandidateSet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("policy did not stabilize within {rounds} rounds")]
    NoStabilization { rounds: usize },

    #[error("rejection budget of {attempts} attempts exceeded")]
    RejectionBudgetExceeded { attempts: usize },

    #[error("grid: {0}")]
    InvalidGrid(String),

    #[error("capture cannot be forced from {} product states", .states.len())]
    NotForcible { states: Vec<usize> },
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
