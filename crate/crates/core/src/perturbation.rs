//! Solving zero-length-cycle instances by adding `δ > 0` to every arc and letting `δ ↓ 0`.

use crate::bellman::apply_t;
use crate::cost::CostVector;
use crate::dijkstra::dijkstra_run;
use crate::error::RspError;
use crate::graph::{is_proper, Policy, RspGraph};
use crate::policy_eval::eval_proper;
use crate::scalar::Scalar;
use crate::vi::vi_from_infinity;

/// Every arc length plus `delta`.
pub fn perturb_graph<S: Scalar>(g: &RspGraph<S>, delta: S) -> Result<RspGraph<S>, RspError> {
    if delta <= S::zero() {
        return Err(RspError::InvalidParameter(format!("delta must be positive, got {}", delta.to_literal())));
    }
    Ok(g.map_lengths(|_, _, w| w + delta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerSolver {
    ValueIteration,
    /// Label setting; needs nonnegative perturbed lengths.
    LabelSetting,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbOptions<S> {
    pub delta0: S,
    pub shrink: S,
    pub max_rounds: usize,
    pub inner: InnerSolver,
}

impl<S: Scalar> Default for PerturbOptions<S> {
    fn default() -> Self {
        PerturbOptions {
            delta0: S::one(),
            shrink: S::from_ratio(1, 4),
            max_rounds: 20,
            inner: InnerSolver::ValueIteration,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationTrace<S> {
    pub deltas: Vec<S>,
    /// Optimal cost of each perturbed problem.
    pub costs: Vec<CostVector<S>>,
    pub policies: Vec<Policy>,
    /// Cost of each round's policy on the unperturbed graph.
    pub unperturbed_costs: Vec<CostVector<S>>,
}

/// Solves `δ`-perturbed problems for `δ = δ0, δ0·shrink, …`.
///
/// Stops once two consecutive rounds return the same policy and that
/// policy's unperturbed cost is a fixed point of `T`. A proper policy's cost
/// is never below the optimum over proper policies, and that optimum is the
/// only fixed point of `T` above it, so the returned cost is exact.
pub fn solve_by_perturbation<S: Scalar>(
    g: &RspGraph<S>,
    opts: &PerturbOptions<S>,
) -> Result<(CostVector<S>, Policy, PerturbationTrace<S>), RspError> {
    g.ensure_valid()?;
    if opts.delta0 <= S::zero() || opts.shrink <= S::zero() || opts.shrink >= S::one() {
        return Err(RspError::InvalidParameter("need delta0 > 0 and 0 < shrink < 1".into()));
    }
    let mut trace = PerturbationTrace {
        deltas: Vec::new(),
        costs: Vec::new(),
        policies: Vec::new(),
        unperturbed_costs: Vec::new(),
    };
    let mut delta = opts.delta0;
    for _ in 0..opts.max_rounds {
        let pg = perturb_graph(g, delta)?;
        let (cost, mu) = match opts.inner {
            InnerSolver::ValueIteration => {
                let (j, mu, _) = vi_from_infinity(&pg)?;
                (j, mu)
            }
            InnerSolver::LabelSetting => {
                let r = dijkstra_run(&pg)?;
                (r.cost, r.policy)
            }
        };
        if !is_proper(g, &mu) {
            return Err(RspError::PolicyNotProper);
        }
        let base = eval_proper(g, &mu)?;
        let repeated = trace.policies.last() == Some(&mu);
        trace.deltas.push(delta);
        trace.costs.push(cost);
        trace.policies.push(mu.clone());
        trace.unperturbed_costs.push(base.clone());
        if repeated && apply_t(g, &base).approx_eq(&base) {
            return Ok((base, mu, trace));
        }
        delta = delta * opts.shrink;
    }
    Err(RspError::NoStabilization { rounds: opts.max_rounds })
}
