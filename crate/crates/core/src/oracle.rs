//! Ground truth by exhaustive policy enumeration.

use crate::cost::CostVector;
use crate::error::RspError;
use crate::graph::{classify_policy, proper_policy_exists, Policy, PolicyClassification, PolicyIter, RspGraph};
use crate::policy_eval::{eval_limsup, eval_limsup_window, eval_proper};
use crate::scalar::Scalar;

pub const DEFAULT_POLICY_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyRecord<S> {
    pub policy: Policy,
    pub classification: PolicyClassification<S>,
    pub cost: CostVector<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<S> {
    /// Minimum over proper policies; `None` when no proper policy exists.
    pub j_hat: Option<CostVector<S>>,
    /// Lexicographically first proper policy attaining `j_hat` at every node at once.
    pub optimal_proper: Option<Policy>,
    /// Minimum over all policies.
    pub j_star_minimax: CostVector<S>,
    pub per_policy: Vec<PolicyRecord<S>>,
}

impl<S: Scalar> OracleResult<S> {
    pub fn j_hat(&self) -> Result<&CostVector<S>, RspError> {
        self.j_hat
            .as_ref()
            .ok_or(RspError::NoProperPolicy { n_nodes: self.j_star_minimax.len(), reachable: Vec::new() })
    }

    /// Every proper policy whose cost equals `j_hat`.
    pub fn optimal_proper_policies(&self) -> Vec<&Policy> {
        let Some(j_hat) = &self.j_hat else { return Vec::new() };
        self.per_policy
            .iter()
            .filter(|r| r.classification.is_proper && r.cost.approx_eq(j_hat))
            .map(|r| &r.policy)
            .collect()
    }
}

/// Every policy once, in lexicographic order; refuses more than `cap`.
pub fn enumerate_policies<S: Scalar>(g: &RspGraph<S>, cap: u128) -> Result<PolicyIter, RspError> {
    let count = g.policy_count();
    if count > cap {
        return Err(RspError::PolicyCapExceeded { count, cap });
    }
    Ok(g.policies())
}

/// Evaluates every policy. Improper ones use the exact limsup, or the
/// windowed estimate when `horizon` is given.
pub fn brute_force<S: Scalar>(g: &RspGraph<S>, horizon: Option<usize>) -> Result<OracleResult<S>, RspError> {
    brute_force_capped(g, horizon, DEFAULT_POLICY_CAP)
}

pub fn brute_force_capped<S: Scalar>(
    g: &RspGraph<S>,
    horizon: Option<usize>,
    cap: u128,
) -> Result<OracleResult<S>, RspError> {
    g.ensure_valid()?;
    let n = g.n_nodes();
    let mut per_policy = Vec::new();
    for mu in enumerate_policies(g, cap)? {
        let classification = classify_policy(g, &mu)?;
        let cost = if classification.is_proper {
            eval_proper(g, &mu)?
        } else {
            match horizon {
                None => eval_limsup(g, &mu)?.cost,
                Some(k) => eval_limsup_window(g, &mu, k)?.cost,
            }
        };
        per_policy.push(PolicyRecord { policy: mu, classification, cost });
    }

    let componentwise_min = |records: &mut dyn Iterator<Item = &PolicyRecord<S>>| {
        records.fold(None::<CostVector<S>>, |acc, r| Some(acc.map_or_else(|| r.cost.clone(), |a| a.min(&r.cost))))
    };
    let j_star_minimax = componentwise_min(&mut per_policy.iter()).expect("at least one policy");
    let j_hat = componentwise_min(&mut per_policy.iter().filter(|r| r.classification.is_proper));

    let optimal_proper = match &j_hat {
        None => None,
        Some(j) => Some(
            per_policy
                .iter()
                .find(|r| r.classification.is_proper && r.cost.approx_eq(j))
                .map(|r| r.policy.clone())
                .ok_or(RspError::NoSimultaneousMinimizer)?,
        ),
    };
    debug_assert_eq!(j_hat.is_some(), proper_policy_exists(g).0);
    debug_assert_eq!(j_star_minimax.len(), n);
    Ok(OracleResult { j_hat, optimal_proper, j_star_minimax, per_policy })
}
