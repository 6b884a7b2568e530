//! Value iteration: synchronous, from `J ≡ +inf` with finite termination, and one event at a time.

use crate::bellman::{apply_t, apply_t_at, greedy_policy, proper_greedy_policy};
use crate::cost::{Cost, CostVector};
use crate::error::RspError;
use crate::graph::{is_proper, Node, Policy, RspGraph};
use crate::scalar::Scalar;
use crate::schedule::{Phase, Schedule};

#[derive(Debug, Clone, PartialEq)]
pub struct ViTrace<S> {
    /// `J_0, J_1, …` including the start.
    pub iterates: Vec<CostVector<S>>,
    /// Sweeps (or events) applied.
    pub iterations: usize,
    pub converged: bool,
    /// First `k` with `J_k = J_{k+1}`, for the run from `+inf`.
    pub settled_at: Option<usize>,
    /// `X_0 = {t}, X_1, …` built from the returned policy.
    pub layer_sets: Option<Vec<Vec<Node>>>,
}

/// Layers `X_0 = {t}`, `X_{k+1}` = unplaced nodes whose successors under `μ`
/// are all placed. `None` if some node is never placed (improper `μ`).
pub fn layer_sets<S: Scalar>(g: &RspGraph<S>, mu: &Policy) -> Option<Vec<Vec<Node>>> {
    let n = g.n_nodes();
    let mut placed = vec![false; n];
    let mut layers = vec![vec![Node::Dest]];
    let mut count = 0;
    while count < n {
        let next: Vec<usize> = (0..n)
            .filter(|&x| !placed[x])
            .filter(|&x| g.successors(x, mu.control(x)).iter().all(|s| s.to.state().is_none_or(|y| placed[y])))
            .collect();
        if next.is_empty() {
            return None;
        }
        for &x in &next {
            placed[x] = true;
        }
        count += next.len();
        layers.push(next.into_iter().map(Node::State).collect());
    }
    Some(layers)
}

/// `J_{k+1} = T J_k` from `J_0 ≡ +inf`.
///
/// Under the standing assumptions this reaches a fixed point after at most
/// `N` sweeps; failure to do so within `N + 1` sweeps is reported as
/// [`RspError::NotSettled`]. A node still at `+inf` cannot force termination.
/// The returned policy is greedy, preferring a proper greedy policy when the
/// plain lowest-index choice is improper.
pub fn vi_from_infinity<S: Scalar>(g: &RspGraph<S>) -> Result<(CostVector<S>, Policy, ViTrace<S>), RspError> {
    g.ensure_valid()?;
    let n = g.n_nodes();
    let mut iterates = vec![CostVector::infinite(n)];
    let mut settled_at = None;
    for k in 0..=n {
        let next = apply_t(g, &iterates[k]);
        let same = next.approx_eq(&iterates[k]);
        iterates.push(next);
        if same {
            settled_at = Some(k);
            break;
        }
    }
    let Some(k) = settled_at else {
        return Err(RspError::NotSettled { sweeps: n + 1 });
    };
    iterates.truncate(k + 1);
    let j = iterates[k].clone();
    if let Some(x) = (0..n).find(|&x| j[x] == Cost::PosInf) {
        return Err(RspError::UnreachableNode { node: Node::State(x) });
    }
    let mut mu = greedy_policy(g, &j);
    if !is_proper(g, &mu) {
        if let Some(p) = proper_greedy_policy(g, &j) {
            mu = p;
        }
    }
    let trace =
        ViTrace { iterates, iterations: k, converged: true, settled_at: Some(k), layer_sets: layer_sets(g, &mu) };
    Ok((j, mu, trace))
}

/// Synchronous `J_{k+1} = T J_k` from a finite start.
///
/// Exact scalars stop at the first repeat. Float scalars stop after two
/// consecutive sweeps move by at most `tol` in sup norm. Hitting `max_iter`
/// is reported through `converged = false`.
pub fn vi<S: Scalar>(
    g: &RspGraph<S>,
    j0: &CostVector<S>,
    tol: S,
    max_iter: usize,
) -> Result<(CostVector<S>, ViTrace<S>), RspError> {
    g.ensure_valid()?;
    if j0.len() != g.n_nodes() || !j0.all_finite() {
        return Err(RspError::NonFiniteStart);
    }
    let mut iterates = vec![j0.clone()];
    let mut quiet = 0;
    let mut converged = false;
    for _ in 0..max_iter {
        let cur = iterates.last().expect("nonempty");
        let next = apply_t(g, cur);
        let close = if S::EXACT { next == *cur } else { next.sup_distance(cur).is_some_and(|d| d <= tol) };
        iterates.push(next);
        quiet = if close { quiet + 1 } else { 0 };
        if (S::EXACT && quiet >= 1) || quiet >= 2 {
            converged = true;
            break;
        }
    }
    let iterations = iterates.len() - 1 - usize::from(converged) * if S::EXACT { 1 } else { 2 };
    let j = iterates.last().expect("nonempty").clone();
    Ok((j, ViTrace { iterates, iterations, converged, settled_at: None, layer_sets: None }))
}

/// Asynchronous value iteration: each event sets `J(x) = (TJ)(x)` for its
/// nodes, reading the current `J`. The schedule is replayed until one full
/// pass changes nothing, or `max_events` have run.
///
/// `iterations` counts events up to and including the last one that changed `J`.
pub fn vi_async<S: Scalar>(
    g: &RspGraph<S>,
    j0: &CostVector<S>,
    sched: &Schedule,
    max_events: usize,
) -> Result<(CostVector<S>, ViTrace<S>), RspError> {
    g.ensure_valid()?;
    let n = g.n_nodes();
    if j0.len() != n {
        return Err(RspError::InvalidParameter(format!("start has {} entries, graph has {n} nodes", j0.len())));
    }
    sched.check_fair(n, None)?;
    if sched.events().iter().any(|e| e.phase != Phase::Improve) {
        return Err(RspError::InvalidSchedule("value iteration takes improve events only".into()));
    }
    let mut j = j0.clone();
    let mut iterates = vec![j.clone()];
    let mut quiet = 0;
    let mut last_change = 0;
    let mut converged = false;
    for k in 0..max_events {
        let event = &sched.events()[k % sched.len()];
        let updates: Vec<(usize, Cost<S>)> = event.nodes.iter().map(|&x| (x, apply_t_at(g, x, &j))).collect();
        let mut changed = false;
        for (x, v) in updates {
            if !v.approx_eq(&j[x]) {
                changed = true;
            }
            j[x] = v;
        }
        if changed {
            quiet = 0;
            last_change = k + 1;
            iterates.push(j.clone());
        } else {
            quiet += 1;
            if quiet >= sched.len() {
                converged = true;
                break;
            }
        }
    }
    Ok((j, ViTrace { iterates, iterations: last_change, converged, settled_at: None, layer_sets: None }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::augment_termination;
    use crate::{fixtures, Exact};

    fn q(n: i64) -> Exact {
        Exact::from_integer(n)
    }

    fn qv(v: &[i64]) -> CostVector<Exact> {
        CostVector::from_scalars(v.iter().map(|&x| q(x)))
    }

    #[test]
    fn positive_loop_settles_in_one_sweep() {
        let (j, mu, trace) = vi_from_infinity(&fixtures::loop_or_exit(q(2))).unwrap();
        assert_eq!(j, qv(&[1]));
        assert_eq!(mu, Policy::new(vec![0]));
        assert_eq!(trace.settled_at, Some(1));
        assert_eq!(trace.layer_sets, Some(vec![vec![Node::Dest], vec![Node::State(0)]]));
    }

    #[test]
    fn augmented_self_loop_terminates() {
        let g = augment_termination(&fixtures::self_loop_exit(q(1)), q(10));
        let (j, mu, _) = vi_from_infinity(&g).unwrap();
        assert_eq!(j, qv(&[10]));
        assert_eq!(mu, Policy::new(vec![1]));
    }

    #[test]
    fn no_proper_policy_is_reported() {
        let err = vi_from_infinity(&fixtures::self_loop_exit(q(1))).unwrap_err();
        assert_eq!(err, RspError::UnreachableNode { node: Node::State(0) });
    }

    #[test]
    fn zero_cycle_returns_proper_policy() {
        let (j, mu, _) = vi_from_infinity(&fixtures::stay_or_move::<Exact>()).unwrap();
        assert_eq!(j, qv(&[1]));
        assert_eq!(mu, Policy::new(vec![1]));
    }

    #[test]
    fn zero_cycle_vi_from_finite_starts() {
        let g = fixtures::stay_or_move::<Exact>();
        let (j, t) = vi(&g, &qv(&[3]), q(0), 100).unwrap();
        assert_eq!(j, qv(&[1]));
        assert!(t.converged);
        assert_eq!(t.iterations, 1);
        let half = CostVector::from_scalars([Exact::new(1, 2)]);
        let (j, t) = vi(&g, &half, q(0), 100).unwrap();
        assert_eq!(j, half);
        assert_eq!(t.iterations, 0);
    }

    #[test]
    fn vi_rejects_infinite_start() {
        let g = fixtures::stay_or_move::<Exact>();
        assert_eq!(vi(&g, &CostVector::infinite(1), q(0), 10).unwrap_err(), RspError::NonFiniteStart);
    }

    #[test]
    fn float_vi_uses_tolerance() {
        let g = fixtures::loop_or_exit(2.0_f64);
        let (j, t) = vi(&g, &CostVector::from_scalars([7.0]), 1e-12, 100).unwrap();
        assert!(t.converged);
        assert_eq!(j, CostVector::from_scalars([1.0]));
    }

    #[test]
    fn async_chain_in_layer_order() {
        let g = fixtures::chain::<Exact>();
        let (j, t) = vi_async(&g, &CostVector::infinite(2), &Schedule::from_order(&[1, 0]), 100).unwrap();
        assert_eq!(j, qv(&[5, 3]));
        assert_eq!(t.iterations, 2);
        assert!(t.converged);
        let (_, t) = vi_async(&g, &CostVector::infinite(2), &Schedule::from_order(&[0, 1]), 100).unwrap();
        assert_eq!(t.iterations, 3);
    }

    #[test]
    fn async_rejects_evaluate_events() {
        let g = fixtures::chain::<Exact>();
        let s = Schedule::improve_then_evaluate(2);
        assert!(matches!(vi_async(&g, &CostVector::infinite(2), &s, 10), Err(RspError::InvalidSchedule(_))));
    }
}
