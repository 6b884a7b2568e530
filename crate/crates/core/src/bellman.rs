//! The mappings `H`, `T_μ` and `T`, and greedy policy extraction.
//!
//! Arc lengths are finite, so `H` only ever adds a finite scalar to an
//! extended value and can never meet `+inf + -inf`.

use crate::cost::{Cost, CostVector};
use crate::graph::{Policy, RspGraph};
use crate::scalar::Scalar;

/// `H(x,u,J) = max_{y ∈ Y(x,u)} [g(x,u,y) + J̃(y)]`.
pub fn eval_h<S: Scalar>(g: &RspGraph<S>, x: usize, u: usize, j: &CostVector<S>) -> Cost<S> {
    g.successors(x, u).iter().map(|s| j.at(s.to).plus(s.length)).reduce(Cost::max).expect("successor sets are nonempty")
}

/// `(T_μ J)(x) = H(x, μ(x), J)`.
pub fn apply_tmu<S: Scalar>(g: &RspGraph<S>, mu: &Policy, j: &CostVector<S>) -> CostVector<S> {
    CostVector::new((0..g.n_nodes()).map(|x| eval_h(g, x, mu.control(x), j)).collect())
}

/// `(T J)(x)` at a single node.
pub fn apply_t_at<S: Scalar>(g: &RspGraph<S>, x: usize, j: &CostVector<S>) -> Cost<S> {
    (0..g.controls(x).len()).map(|u| eval_h(g, x, u, j)).reduce(Cost::min).expect("control sets are nonempty")
}

/// `(T J)(x) = min_u H(x,u,J)`.
pub fn apply_t<S: Scalar>(g: &RspGraph<S>, j: &CostVector<S>) -> CostVector<S> {
    CostVector::new((0..g.n_nodes()).map(|x| apply_t_at(g, x, j)).collect())
}

/// Lowest-index control attaining `min_u H(x,u,J)`, and that minimum.
pub fn greedy_control<S: Scalar>(g: &RspGraph<S>, x: usize, j: &CostVector<S>) -> (usize, Cost<S>) {
    let values: Vec<Cost<S>> = (0..g.controls(x).len()).map(|u| eval_h(g, x, u, j)).collect();
    let best = values.iter().copied().reduce(Cost::min).expect("control sets are nonempty");
    let u = values.iter().position(|v| v.approx_le(&best)).expect("minimum is attained");
    (u, best)
}

/// All controls attaining the minimum at `x`, in index order.
pub fn minimizing_controls<S: Scalar>(g: &RspGraph<S>, x: usize, j: &CostVector<S>) -> Vec<usize> {
    let values: Vec<Cost<S>> = (0..g.controls(x).len()).map(|u| eval_h(g, x, u, j)).collect();
    let best = values.iter().copied().reduce(Cost::min).expect("control sets are nonempty");
    (0..values.len()).filter(|&u| values[u].approx_le(&best)).collect()
}

/// Policy with `T_μ J = T J`, ties to the lowest control index.
pub fn greedy_policy<S: Scalar>(g: &RspGraph<S>, j: &CostVector<S>) -> Policy {
    Policy::new((0..g.n_nodes()).map(|x| greedy_control(g, x, j).0).collect())
}

/// A proper policy with `T_μ J = T J`, if one exists.
///
/// Nodes are settled in layers: a node settles once some minimizing control
/// has all its successors settled, and takes the lowest such control.
pub fn proper_greedy_policy<S: Scalar>(g: &RspGraph<S>, j: &CostVector<S>) -> Option<Policy> {
    let candidates: Vec<Vec<usize>> = (0..g.n_nodes()).map(|x| minimizing_controls(g, x, j)).collect();
    layered_choice(g, &candidates, false)
}

/// Some proper policy, taking at each node the lowest control that forces
/// termination in the fewest steps. `None` when no proper policy exists.
pub fn some_proper_policy<S: Scalar>(g: &RspGraph<S>) -> Option<Policy> {
    let candidates: Vec<Vec<usize>> = (0..g.n_nodes()).map(|x| (0..g.controls(x).len()).collect()).collect();
    layered_choice(g, &candidates, false)
}

/// Whether every policy with `T_μ J = T J` is proper, i.e. the arcs of all
/// minimizing controls together form no cycle.
pub fn all_greedy_proper<S: Scalar>(g: &RspGraph<S>, j: &CostVector<S>) -> bool {
    let candidates: Vec<Vec<usize>> = (0..g.n_nodes()).map(|x| minimizing_controls(g, x, j)).collect();
    layered_choice(g, &candidates, true).is_some()
}

/// Settles nodes layer by layer. A node is ready when some candidate (or,
/// with `every`, each candidate) has all its successors settled.
fn layered_choice<S: Scalar>(g: &RspGraph<S>, candidates: &[Vec<usize>], every: bool) -> Option<Policy> {
    let n = g.n_nodes();
    let mut choice: Vec<Option<usize>> = vec![None; n];
    loop {
        let mut progressed = false;
        let settled: Vec<bool> = choice.iter().map(Option::is_some).collect();
        for x in 0..n {
            if choice[x].is_some() {
                continue;
            }
            let closed = |u: usize| g.successors(x, u).iter().all(|s| s.to.state().is_none_or(|y| settled[y]));
            let ready = if every {
                candidates[x].iter().all(|&u| closed(u)).then(|| candidates[x][0])
            } else {
                candidates[x].iter().copied().find(|&u| closed(u))
            };
            if let Some(u) = ready {
                choice[x] = Some(u);
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    choice.into_iter().collect::<Option<Vec<_>>>().map(Policy::new)
}
