//! Policy iteration over proper policies, and the asynchronous optimistic
//! variant that keeps a threshold function `V`.

use crate::bellman::{apply_t, eval_h, greedy_control, greedy_policy};
use crate::cost::{Cost, CostVector};
use crate::error::RspError;
use crate::graph::{default_termination_cost, is_proper, Policy, RspGraph};
use crate::policy_eval::eval_proper;
use crate::scalar::Scalar;
use crate::schedule::{Phase, Schedule};

#[derive(Debug, Clone, PartialEq)]
pub struct PiTrace<S> {
    pub policies: Vec<Policy>,
    pub costs: Vec<CostVector<S>>,
    /// Number of policy evaluations.
    pub iterations: usize,
}

/// `μ_{k+1} = greedy(J_{μ_k})` until `J_{μ_k} = T J_{μ_k}`.
///
/// Every generated policy must be proper; an improper one means the graph
/// has an improper policy with a nonpositive cycle.
pub fn pi_proper<S: Scalar>(g: &RspGraph<S>, mu0: &Policy) -> Result<(CostVector<S>, Policy, PiTrace<S>), RspError> {
    g.ensure_valid()?;
    g.check_policy(mu0)?;
    if !is_proper(g, mu0) {
        return Err(RspError::PolicyNotProper);
    }
    let limit = usize::try_from(g.policy_count()).unwrap_or(usize::MAX).saturating_add(1);
    let mut trace = PiTrace { policies: Vec::new(), costs: Vec::new(), iterations: 0 };
    let mut mu = mu0.clone();
    loop {
        let j = eval_proper(g, &mu)?;
        trace.iterations += 1;
        trace.policies.push(mu.clone());
        trace.costs.push(j.clone());
        if apply_t(g, &j).approx_eq(&j) {
            return Ok((j, mu, trace));
        }
        if trace.iterations >= limit {
            return Err(RspError::NotSettled { sweeps: trace.iterations });
        }
        mu = greedy_policy(g, &j);
        if !is_proper(g, &mu) {
            return Err(RspError::ImproperPolicyGenerated { iteration: trace.iterations });
        }
    }
}

/// State of the asynchronous algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct AsyncPiState<S> {
    pub j: CostVector<S>,
    pub v: CostVector<S>,
    pub mu: Policy,
    /// Disjoint blocks covering the nodes; each event acts on a union of blocks.
    pub partition: Vec<Vec<usize>>,
}

impl<S: Scalar> AsyncPiState<S> {
    /// `J = V ≡ ḡ` (the default termination cost), first policy, singleton blocks.
    pub fn initial(g: &RspGraph<S>) -> Self {
        let n = g.n_nodes();
        let start = CostVector::filled(n, Cost::Finite(default_termination_cost(g)));
        AsyncPiState {
            j: start.clone(),
            v: start,
            mu: Policy::uniform(n, 0),
            partition: (0..n).map(|x| vec![x]).collect(),
        }
    }

    fn validate(&self, g: &RspGraph<S>, sched: &Schedule) -> Result<(), RspError> {
        let n = g.n_nodes();
        if self.j.len() != n || self.v.len() != n {
            return Err(RspError::InvalidParameter("J and V must have one entry per node".into()));
        }
        g.check_policy(&self.mu)?;
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in self.partition.iter().enumerate() {
            for &x in block {
                if x >= n || block_of[x] != usize::MAX {
                    return Err(RspError::InvalidParameter(format!("partition is not disjoint over 1..={n}")));
                }
                block_of[x] = b;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(RspError::InvalidParameter("partition does not cover every node".into()));
        }
        sched.check_fair(n, None)?;
        for (i, e) in sched.events().iter().enumerate() {
            for &x in &e.nodes {
                if !self.partition[block_of[x]].iter().all(|y| e.nodes.contains(y)) {
                    return Err(RspError::InvalidSchedule(format!("event {i} splits a partition block")));
                }
            }
        }
        Ok(())
    }
}

/// Whether evaluation reads `min[V, J]` or plain `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Enabled,
    /// Ablation: `V` is ignored. Not guaranteed to converge; kept for testing.
    DisabledAblation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsyncPiOutcome<S> {
    pub state: AsyncPiState<S>,
    pub events: usize,
    pub converged: bool,
    /// The full state recurred at the same schedule position without converging.
    pub cycled: bool,
}

/// Asynchronous optimistic policy iteration.
///
/// For an improve event, every listed node gets
/// `J(x) = V(x) = min_u H(x, u, min[V,J])` and `μ(x)` = the lowest minimizing
/// control. For an evaluate event, `J(x) = H(x, μ(x), min[V,J])`. Updates
/// within one event read the state from before the event. The schedule is
/// replayed until one full pass changes nothing with `J = V = TJ`, or
/// `max_events` have run.
pub fn pi_async<S: Scalar>(
    g: &RspGraph<S>,
    init: AsyncPiState<S>,
    sched: &Schedule,
    max_events: usize,
) -> Result<AsyncPiOutcome<S>, RspError> {
    run_async(g, init, sched, max_events, Threshold::Enabled)
}

/// [`pi_async`] with an explicit threshold mode.
pub fn run_async<S: Scalar>(
    g: &RspGraph<S>,
    init: AsyncPiState<S>,
    sched: &Schedule,
    max_events: usize,
    threshold: Threshold,
) -> Result<AsyncPiOutcome<S>, RspError> {
    g.ensure_valid()?;
    init.validate(g, sched)?;
    let mut s = init;
    let len = sched.len();
    let mut quiet = 0;
    let mut pass_starts: Vec<AsyncPiState<S>> = Vec::new();
    let mut changed_since_start = false;
    for k in 0..max_events {
        if k % len == 0 {
            if changed_since_start && pass_starts.iter().any(|p| same_state(p, &s, threshold)) {
                return Ok(AsyncPiOutcome { state: s, events: k, converged: false, cycled: true });
            }
            pass_starts.push(s.clone());
        }
        let event = &sched.events()[k % len];
        let arg = match threshold {
            Threshold::Enabled => s.v.min(&s.j),
            Threshold::DisabledAblation => s.j.clone(),
        };
        let mut changed = false;
        for &x in &event.nodes {
            match event.phase {
                Phase::Improve => {
                    let (u, val) = greedy_control(g, x, &arg);
                    changed |= !val.approx_eq(&s.j[x]) || u != s.mu.control(x);
                    if threshold == Threshold::Enabled {
                        changed |= !val.approx_eq(&s.v[x]);
                        s.v[x] = val;
                    }
                    s.j[x] = val;
                    s.mu.set(x, u);
                }
                Phase::Evaluate => {
                    let val = eval_h(g, x, s.mu.control(x), &arg);
                    changed |= !val.approx_eq(&s.j[x]);
                    s.j[x] = val;
                }
            }
        }
        changed_since_start |= changed;
        quiet = if changed { 0 } else { quiet + 1 };
        if quiet >= len && settled(g, &s, threshold) {
            return Ok(AsyncPiOutcome { state: s, events: k + 1, converged: true, cycled: false });
        }
    }
    Ok(AsyncPiOutcome { state: s, events: max_events, converged: false, cycled: false })
}

fn settled<S: Scalar>(g: &RspGraph<S>, s: &AsyncPiState<S>, threshold: Threshold) -> bool {
    let v_ok = threshold == Threshold::DisabledAblation || s.v.approx_eq(&s.j);
    v_ok && apply_t(g, &s.j).approx_eq(&s.j)
}

fn same_state<S: Scalar>(a: &AsyncPiState<S>, b: &AsyncPiState<S>, threshold: Threshold) -> bool {
    a.mu == b.mu && a.j == b.j && (threshold == Threshold::DisabledAblation || a.v == b.v)
}
