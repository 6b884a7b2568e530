//! Small hand-checkable instances.

use crate::graph::{Node, RspGraph};
use crate::scalar::Scalar;

/// One node with a single control whose adversary may loop (length `a`) or exit (length 0).
pub fn self_loop_exit<S: Scalar>(a: S) -> RspGraph<S> {
    let mut g = RspGraph::new(1);
    g.add_control_with(0, "loop", [(Node::State(0), a), (Node::Dest, S::zero())]);
    g
}

/// One node with a sure exit of length 1 (`exit`, listed first) or the
/// adversarial loop of [`self_loop_exit`] (`stay`).
pub fn loop_or_exit<S: Scalar>(a: S) -> RspGraph<S> {
    let mut g = RspGraph::new(1);
    g.add_control_with(0, "exit", [(Node::Dest, S::one())]);
    g.add_control_with(0, "stay", [(Node::State(0), a), (Node::Dest, S::zero())]);
    g
}

/// Deterministic zero-length cycle: `stay` at cost 0 (listed first) or `move` to `t` at cost 1.
pub fn stay_or_move<S: Scalar>() -> RspGraph<S> {
    let mut g = RspGraph::new(1);
    g.add_control_with(0, "stay", [(Node::State(0), S::zero())]);
    g.add_control_with(0, "move", [(Node::Dest, S::one())]);
    g
}

/// Two nodes. At node 1, `wide` lets the adversary pick 1, 2 or `t`; `exit`
/// goes to `t`. Node 2 returns to 1 or exits. The `wide` policy has the
/// cycles (1,1) and (1,2,1).
pub fn two_node_cycles<S: Scalar>() -> RspGraph<S> {
    let one = S::one();
    let two = one + one;
    let mut g = RspGraph::new(2);
    g.add_control_with(0, "wide", [(Node::State(0), one), (Node::State(1), one), (Node::Dest, one)]);
    g.add_control_with(0, "exit", [(Node::Dest, two + two)]);
    g.add_control_with(1, "back", [(Node::State(0), one), (Node::Dest, two)]);
    g
}

/// Chain `1 → 2 → t` with lengths 2 and 3.
pub fn chain<S: Scalar>() -> RspGraph<S> {
    let two = S::one() + S::one();
    let mut g = RspGraph::new(2);
    g.add_control_with(0, "next", [(Node::State(1), two)]);
    g.add_control_with(1, "next", [(Node::Dest, two + S::one())]);
    g
}

/// Node 1 (`go`) moves to node 2 at length 2 or exits at 0. Node 2 returns
/// to 1 at length -2 (`back`, listed first) or exits at -2 (`exit`). The
/// cycle 1 → 2 → 1 has length 0.
pub fn zero_cycle_pair<S: Scalar>() -> RspGraph<S> {
    let two = S::one() + S::one();
    let mut g = RspGraph::new(2);
    g.add_control_with(0, "go", [(Node::State(1), two), (Node::Dest, S::zero())]);
    g.add_control_with(1, "back", [(Node::State(0), -two)]);
    g.add_control_with(1, "exit", [(Node::Dest, -two)]);
    g
}
