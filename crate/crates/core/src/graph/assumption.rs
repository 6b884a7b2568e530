use std::fmt;
use std::str::FromStr;

use crate::error::RspError;
use crate::graph::{classify_policy, Node, Policy, RspGraph};
use crate::oracle::DEFAULT_POLICY_CAP;
use crate::scalar::Scalar;

/// Standing assumptions under which the solvers are guaranteed to work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Assumption {
    /// A proper policy exists; every improper policy has only positive cycles.
    A11,
    /// Every policy is regular.
    A22,
    /// A regular policy exists; every irregular policy has a positive cycle.
    A23,
    /// A proper policy exists; every improper policy has only nonnegative cycles.
    A43,
    /// `A11` plus nonnegative arc lengths.
    A51,
}

impl Assumption {
    pub const ALL: [Assumption; 5] =
        [Assumption::A11, Assumption::A22, Assumption::A23, Assumption::A43, Assumption::A51];
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Assumption::A11 => "A1.1",
            Assumption::A22 => "A2.2",
            Assumption::A23 => "A2.3",
            Assumption::A43 => "A4.3",
            Assumption::A51 => "A5.1",
        })
    }
}

impl FromStr for Assumption {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Assumption::ALL
            .into_iter()
            .find(|a| a.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown assumption {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionReport {
    pub assumption: Assumption,
    pub holds: bool,
    /// A policy breaking the assumption, when one policy is to blame.
    pub witness: Option<Policy>,
    pub reason: String,
}

/// Reachability fixpoint `N_{k+1} = N_k ∪ {x | ∃u: Y(x,u) ⊆ N_k}` from `N_0 = {t}`.
///
/// Returns whether every node is reached, and the reached set (destination first,
/// then nodes in increasing order).
pub fn proper_policy_exists<S: Scalar>(g: &RspGraph<S>) -> (bool, Vec<Node>) {
    let n = g.n_nodes();
    let mut inside = vec![false; n];
    let member = |inside: &[bool], y: Node| match y {
        Node::Dest => true,
        Node::State(i) => inside[i],
    };
    loop {
        let fresh: Vec<usize> = (0..n)
            .filter(|&x| !inside[x])
            .filter(|&x| g.controls(x).iter().any(|c| c.successors.iter().all(|s| member(&inside, s.to))))
            .collect();
        if fresh.is_empty() {
            break;
        }
        for x in fresh {
            inside[x] = true;
        }
    }
    let mut set = vec![Node::Dest];
    set.extend((0..n).filter(|&x| inside[x]).map(Node::State));
    (inside.iter().all(|&b| b), set)
}

/// `N · max(0, max g) + 1`: exceeds the cost of every proper policy.
pub fn default_termination_cost<S: Scalar>(g: &RspGraph<S>) -> S {
    let max_len = g.arcs().map(|(_, _, s)| s.length).fold(S::zero(), |m, v| if v > m { v } else { m });
    S::from_usize(g.n_nodes()).expect("node count fits") * max_len + S::one()
}

/// Adds a control `Y = {t}` with length `g_bar` at every node.
///
/// The control is named `terminate`, with a numeric suffix if that name is taken.
pub fn augment_termination<S: Scalar>(g: &RspGraph<S>, g_bar: S) -> RspGraph<S> {
    let mut out = g.clone();
    for x in 0..out.n_nodes() {
        let mut name = "terminate".to_string();
        let mut k = 1;
        while out.control_index(x, &name).is_some() {
            k += 1;
            name = format!("terminate{k}");
        }
        out.add_control_with(x, name, [(Node::Dest, g_bar)]);
    }
    out
}

/// Decides an assumption by enumerating every policy. Desk scale only.
pub fn check_assumption<S: Scalar>(g: &RspGraph<S>, which: Assumption) -> Result<AssumptionReport, RspError> {
    let count = g.policy_count();
    if count > DEFAULT_POLICY_CAP {
        return Err(RspError::PolicyCapExceeded { count, cap: DEFAULT_POLICY_CAP });
    }
    let report = |holds: bool, witness: Option<Policy>, reason: String| AssumptionReport {
        assumption: which,
        holds,
        witness,
        reason,
    };

    if which == Assumption::A51 {
        if let Some((x, _, s)) = g.arcs().find(|(_, _, s)| s.length < S::zero()) {
            return Ok(report(false, None, format!("negative arc length {} at node {}", s.length.to_literal(), x + 1)));
        }
        let inner = check_assumption(g, Assumption::A11)?;
        return Ok(AssumptionReport { assumption: which, ..inner });
    }

    let mut any_proper = false;
    let mut any_regular = false;
    for mu in g.policies() {
        let c = classify_policy(g, &mu)?;
        any_proper |= c.is_proper;
        any_regular |= c.regular;
        let bad = match which {
            Assumption::A11 => !c.is_proper && !positive(c.min_cycle_mean.finite()),
            Assumption::A43 => !c.is_proper && !nonnegative(c.min_cycle_mean.finite()),
            Assumption::A22 => !c.regular,
            Assumption::A23 => !c.regular && !positive(c.max_cycle_mean.finite()),
            Assumption::A51 => unreachable!(),
        };
        if bad {
            let reason = match which {
                Assumption::A11 => "improper policy with a cycle of nonpositive length",
                Assumption::A43 => "improper policy with a cycle of negative length",
                Assumption::A22 => "irregular policy",
                _ => "irregular policy without a cycle of positive length",
            };
            return Ok(report(false, Some(mu), reason.to_string()));
        }
    }
    Ok(match which {
        Assumption::A11 | Assumption::A43 if !any_proper => report(false, None, "no proper policy exists".to_string()),
        Assumption::A23 if !any_regular => report(false, None, "no regular policy exists".to_string()),
        _ => report(true, None, String::new()),
    })
}

fn positive<S: Scalar>(v: Option<S>) -> bool {
    v.is_some_and(|v| v > S::zero())
}

fn nonnegative<S: Scalar>(v: Option<S>) -> bool {
    v.is_some_and(|v| v >= S::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, Exact};

    fn q(n: i64) -> Exact {
        Exact::from_integer(n)
    }

    #[test]
    fn proper_policy_reachability() {
        let (ok, set) = proper_policy_exists(&fixtures::loop_or_exit(q(0)));
        assert!(ok);
        assert_eq!(set, vec![Node::Dest, Node::State(0)]);

        let (ok, set) = proper_policy_exists(&fixtures::self_loop_exit(q(1)));
        assert!(!ok);
        assert_eq!(set, vec![Node::Dest]);
    }

    #[test]
    fn trapped_second_node() {
        let mut g = RspGraph::new(2);
        g.add_control_with(0, "exit", [(Node::Dest, q(1))]);
        g.add_control_with(1, "stuck", [(Node::State(0), q(1)), (Node::State(1), q(1))]);
        let (ok, set) = proper_policy_exists(&g);
        assert!(!ok);
        assert_eq!(set, vec![Node::Dest, Node::State(0)]);
    }

    #[test]
    fn augmented_graph_has_proper_policy() {
        let g = augment_termination(&fixtures::self_loop_exit(q(1)), q(10));
        assert_eq!(g.controls(0).len(), 2);
        assert!(proper_policy_exists(&g).0);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn augmented_name_avoids_clash() {
        let mut g = RspGraph::new(1);
        g.add_control_with(0, "terminate", [(Node::Dest, q(1))]);
        let a = augment_termination(&g, q(5));
        assert_eq!(a.control(0, 1).name, "terminate2");
    }

    #[test]
    fn zero_cycle_example_assumptions() {
        let g = fixtures::stay_or_move::<Exact>();
        assert!(!check_assumption(&g, Assumption::A11).unwrap().holds);
        assert!(check_assumption(&g, Assumption::A43).unwrap().holds);
        let a = fixtures::loop_or_exit(q(2));
        assert!(check_assumption(&a, Assumption::A11).unwrap().holds);
        assert!(check_assumption(&a, Assumption::A51).unwrap().holds);
    }

    #[test]
    fn negative_arc_breaks_a51() {
        let g = fixtures::loop_or_exit(q(-1));
        let r = check_assumption(&g, Assumption::A51).unwrap();
        assert!(!r.holds);
        assert!(r.reason.contains("negative arc"));
    }

    #[test]
    fn assumption_names_round_trip() {
        for a in Assumption::ALL {
            assert_eq!(a.to_string().parse::<Assumption>().unwrap(), a);
        }
    }
}
