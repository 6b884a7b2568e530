//! One-step lookahead over a proper base policy.

use crate::bellman::{greedy_control, greedy_policy};
use crate::cost::CostVector;
use crate::error::RspError;
use crate::graph::{is_proper, Policy, RspGraph};
use crate::policy_eval::eval_proper;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct RolloutPlan<S> {
    pub base: Policy,
    /// `J_μ` of the base policy, computed once.
    pub base_cost: CostVector<S>,
    pub improved: Policy,
}

/// `μ̄(x) = argmin_u max_y [g(x,u,y) + J̃_μ(y)]`, ties to the lowest index.
pub fn rollout_policy<S: Scalar>(g: &RspGraph<S>, base: &Policy) -> Result<RolloutPlan<S>, RspError> {
    g.check_policy(base)?;
    if !is_proper(g, base) {
        return Err(RspError::PolicyNotProper);
    }
    let base_cost = eval_proper(g, base)?;
    let improved = greedy_policy(g, &base_cost);
    Ok(RolloutPlan { base: base.clone(), base_cost, improved })
}

/// The rollout control at one node, computed on demand from the cached base cost.
pub fn rollout_control<S: Scalar>(g: &RspGraph<S>, plan: &RolloutPlan<S>, x: usize) -> usize {
    greedy_control(g, x, &plan.base_cost).0
}
