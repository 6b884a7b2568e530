use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::RspError;
use crate::graph::{check_assumption, classify_policy, Assumption, Node, RspGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    pub n_nodes: usize,
    pub max_controls: usize,
    /// Largest successor set; capped at `n_nodes + 1`.
    pub max_branch: usize,
    /// Inclusive range of integer arc lengths.
    pub length_range: (i64, i64),
    /// Instances failing this assumption are rejected and redrawn.
    pub target: Option<Assumption>,
    /// Also reject instances where no improper policy has a zero-length cycle.
    pub require_zero_cycle: bool,
    pub max_attempts: usize,
}

impl GenSpec {
    pub fn new(seed: u64, n_nodes: usize) -> Self {
        GenSpec {
            seed,
            n_nodes,
            max_controls: 3,
            max_branch: 3,
            length_range: (-3, 9),
            target: Some(Assumption::A11),
            require_zero_cycle: false,
            max_attempts: 10_000,
        }
    }
}

/// A random graph drawn reproducibly from `spec.seed`.
///
/// With an A5.1 target the length range is clamped to nonnegative values.
pub fn gen_random<S: Scalar>(spec: &GenSpec) -> Result<RspGraph<S>, RspError> {
    if spec.n_nodes == 0 || spec.max_controls == 0 || spec.max_branch == 0 {
        return Err(RspError::InvalidParameter("sizes must be positive".into()));
    }
    let (mut lo, hi) = spec.length_range;
    if spec.target == Some(Assumption::A51) {
        lo = lo.max(0);
    }
    if lo > hi {
        return Err(RspError::InvalidParameter(format!("empty length range {lo}..={hi}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.max_attempts {
        let g = draw(&mut rng, spec, lo, hi);
        if let Some(a) = spec.target {
            if !check_assumption(&g, a)?.holds {
                continue;
            }
        }
        if spec.require_zero_cycle && !has_zero_cycle(&g)? {
            continue;
        }
        return Ok(g);
    }
    Err(RspError::RejectionBudgetExceeded { attempts: spec.max_attempts })
}

fn draw<S: Scalar>(rng: &mut ChaCha8Rng, spec: &GenSpec, lo: i64, hi: i64) -> RspGraph<S> {
    let n = spec.n_nodes;
    let mut g = RspGraph::new(n);
    for x in 0..n {
        let k = rng.gen_range(1..=spec.max_controls);
        for u in 0..k {
            let b = rng.gen_range(1..=spec.max_branch.min(n + 1));
            let mut targets: Vec<usize> = sample(rng, n + 1, b).into_vec();
            targets.sort_unstable();
            let arcs: Vec<(Node, S)> = targets
                .into_iter()
                .map(|i| {
                    let to = if i == n { Node::Dest } else { Node::State(i) };
                    (to, S::from_i64(rng.gen_range(lo..=hi)).expect("small integer"))
                })
                .collect();
            g.add_control_with(x, format!("u{}", u + 1), arcs);
        }
    }
    g
}

/// `true` iff some policy's cycles have minimum mean exactly zero. Under
/// nonnegative cycles this means a zero-length cycle exists.
pub fn has_zero_cycle<S: Scalar>(g: &RspGraph<S>) -> Result<bool, RspError> {
    for mu in g.policies() {
        if classify_policy(g, &mu)?.min_cycle_mean == crate::cost::Cost::zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exact;

    #[test]
    fn reproducible_and_on_target() {
        let spec = GenSpec::new(1, 4);
        let a: RspGraph<Exact> = gen_random(&spec).unwrap();
        let b: RspGraph<Exact> = gen_random(&spec).unwrap();
        assert_eq!(a, b);
        assert!(check_assumption(&a, Assumption::A11).unwrap().holds);
        assert!(a.validate().is_empty());
    }

    #[test]
    fn a51_lengths_nonnegative() {
        let spec = GenSpec { target: Some(Assumption::A51), ..GenSpec::new(3, 4) };
        let g: RspGraph<Exact> = gen_random(&spec).unwrap();
        assert!(g.arcs().all(|(_, _, s)| s.length >= Exact::from_integer(0)));
    }

    #[test]
    fn zero_cycle_requirement() {
        let spec = GenSpec {
            target: Some(Assumption::A43),
            require_zero_cycle: true,
            length_range: (0, 2),
            ..GenSpec::new(5, 3)
        };
        let g: RspGraph<Exact> = gen_random(&spec).unwrap();
        assert!(has_zero_cycle(&g).unwrap());
        assert!(check_assumption(&g, Assumption::A43).unwrap().holds);
    }

    #[test]
    fn contradictory_target_exhausts_budget() {
        let spec = GenSpec { require_zero_cycle: true, max_attempts: 20, ..GenSpec::new(9, 2) };
        let r: Result<RspGraph<Exact>, _> = gen_random(&spec);
        assert_eq!(r.unwrap_err(), RspError::RejectionBudgetExceeded { attempts: 20 });
    }
}
