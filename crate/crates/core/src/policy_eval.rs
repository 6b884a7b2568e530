//! Policy cost `J_μ`: longest paths for proper policies, `limsup_k T_μ^k J̄` otherwise.

use crate::bellman::apply_tmu;
use crate::cost::{Cost, CostVector};
use crate::error::RspError;
use crate::graph::{policy_subgraph, Node, Policy, PolicySubgraph, RspGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    AcyclicLongestPath,
    /// Closed form from the cycle structure of `A_μ`.
    LimsupExact,
    /// Windowed maximum of `T_μ^k J̄` over `k ∈ [K−N, K]`.
    LimsupWindow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult<S> {
    pub cost: CostVector<S>,
    pub method: EvalMethod,
    pub horizon_used: Option<usize>,
}

/// Worst-case path length to `t` under a proper policy.
pub fn eval_proper<S: Scalar>(g: &RspGraph<S>, mu: &Policy) -> Result<CostVector<S>, RspError> {
    let sub = policy_subgraph(g, mu)?;
    let order = sub.topological_order().ok_or(RspError::PolicyNotProper)?;
    Ok(longest_paths(&sub, &order))
}

fn longest_paths<S: Scalar>(sub: &PolicySubgraph<S>, order: &[usize]) -> CostVector<S> {
    let mut j = CostVector::zeros(sub.n_nodes());
    for &x in order.iter().rev() {
        j[x] = sub
            .successors(x)
            .iter()
            .map(|&(y, w)| j.at(y).plus(w))
            .reduce(Cost::max)
            .expect("successor sets are nonempty");
    }
    j
}

/// `J_μ(x) = limsup_k (T_μ^k J̄)(x)`, computed exactly.
///
/// * `+inf` where a cycle of positive length is reachable.
/// * Otherwise every reachable cycle is nonpositive, and the limsup is the
///   larger of the longest walk to `t` and the longest walk that passes
///   through a node on a zero-length cycle (such walks can be padded to any
///   residue of the horizon). With neither, the value is `-inf`.
#[allow(clippy::needless_range_loop)]
pub fn eval_limsup<S: Scalar>(g: &RspGraph<S>, mu: &Policy) -> Result<EvalResult<S>, RspError> {
    let sub = policy_subgraph(g, mu)?;
    if let Some(order) = sub.topological_order() {
        return Ok(EvalResult {
            cost: longest_paths(&sub, &order),
            method: EvalMethod::AcyclicLongestPath,
            horizon_used: None,
        });
    }
    let n = sub.n_nodes();

    let mut pumping = vec![false; n];
    for comp in sub.cyclic_components() {
        if S::zero().definitely_lt(comp.max_mean) {
            for v in comp.nodes {
                pumping[v] = true;
            }
        }
    }
    let divergent = backward_closure(&sub, pumping);

    // Max-plus closure over nonempty walks inside the non-divergent part, where all cycles are nonpositive.
    let mut d: Vec<Vec<Option<S>>> = vec![vec![None; n]; n];
    let mut to_t: Vec<Option<S>> = vec![None; n];
    for x in (0..n).filter(|&x| !divergent[x]) {
        for &(y, w) in sub.successors(x) {
            match y {
                Node::Dest => to_t[x] = max_opt(to_t[x], Some(w)),
                Node::State(y) => d[x][y] = max_opt(d[x][y], Some(w)),
            }
        }
    }
    for k in 0..n {
        for a in 0..n {
            let Some(ak) = d[a][k] else { continue };
            for b in 0..n {
                if let Some(kb) = d[k][b] {
                    d[a][b] = max_opt(d[a][b], Some(ak + kb));
                }
            }
        }
    }
    let star = |a: usize, b: usize| if a == b { max_opt(d[a][b], Some(S::zero())) } else { d[a][b] };
    let on_zero_cycle: Vec<bool> = (0..n).map(|v| d[v][v].is_some_and(|w| w.approx_eq(S::zero()))).collect();

    let mut cost = Vec::with_capacity(n);
    for x in 0..n {
        if divergent[x] {
            cost.push(Cost::PosInf);
            continue;
        }
        let mut best: Option<S> = None;
        for a in 0..n {
            if let (Some(xa), Some(at)) = (star(x, a), to_t[a]) {
                best = max_opt(best, Some(xa + at));
            }
        }
        for v in (0..n).filter(|&v| on_zero_cycle[v]) {
            let Some(xv) = star(x, v) else { continue };
            for w in 0..n {
                if let Some(vw) = star(v, w) {
                    best = max_opt(best, Some(xv + vw));
                }
            }
        }
        cost.push(best.map_or(Cost::NegInf, Cost::Finite));
    }
    Ok(EvalResult { cost: CostVector::new(cost), method: EvalMethod::LimsupExact, horizon_used: None })
}

/// Finite-horizon estimate of the limsup: iterate `V_k = T_μ^k J̄` for
/// `k ≤ K`, report `+inf` once any `V_k(x)` exceeds `N · max|g|`, and
/// otherwise take the maximum over the last `N + 1` iterates.
///
/// Exact for proper policies when `K ≥ N`. For improper policies it can be
/// off when transients outlast the window; [`eval_limsup`] has no such gap.
pub fn eval_limsup_window<S: Scalar>(g: &RspGraph<S>, mu: &Policy, horizon: usize) -> Result<EvalResult<S>, RspError> {
    g.check_policy(mu)?;
    let n = g.n_nodes();
    if horizon < 2 * n {
        return Err(RspError::InvalidParameter(format!("horizon {horizon} below 2N = {}", 2 * n)));
    }
    let bound = S::from_usize(n).expect("node count fits") * g.max_abs_length();
    let mut v = CostVector::zeros(n);
    let mut window: CostVector<S> = CostVector::filled(n, Cost::NegInf);
    let mut divergent = vec![false; n];
    for k in 1..=horizon {
        v = apply_tmu(g, mu, &v);
        for x in 0..n {
            if Cost::Finite(bound).definitely_lt(&v[x]) {
                divergent[x] = true;
            }
            if k + n >= horizon {
                window[x] = window[x].max(v[x]);
            }
        }
    }
    for x in 0..n {
        if divergent[x] {
            window[x] = Cost::PosInf;
        }
    }
    Ok(EvalResult { cost: window, method: EvalMethod::LimsupWindow, horizon_used: Some(horizon) })
}

/// `J = T_μ J`, exactly or within the scalar's slack.
pub fn verify_bellman<S: Scalar>(g: &RspGraph<S>, mu: &Policy, j: &CostVector<S>) -> bool {
    j.len() == g.n_nodes() && j.all_finite() && apply_tmu(g, mu, j).approx_eq(j)
}

fn max_opt<S: Scalar>(a: Option<S>, b: Option<S>) -> Option<S> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b > a { b } else { a }),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Marks every node that can reach a marked node.
fn backward_closure<S: Scalar>(sub: &PolicySubgraph<S>, mut marked: Vec<bool>) -> Vec<bool> {
    loop {
        let mut changed = false;
        for x in 0..sub.n_nodes() {
            if !marked[x] && sub.successors(x).iter().any(|(y, _)| y.state().is_some_and(|y| marked[y])) {
                marked[x] = true;
                changed = true;
            }
        }
        if !changed {
            return marked;
        }
    }
}
