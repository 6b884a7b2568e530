//! Brute-force reference computations for the integration tests. Nothing here
//! calls the solver or evaluation code under test.
#![allow(dead_code)]

use std::collections::HashMap;

use rsp_core::instances::{gen_random, GenSpec};
use rsp_core::{Exact, Node, Policy, RspGraph};

pub type Q = Exact;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Every policy, by odometer over the control counts.
pub fn all_policies(g: &RspGraph<Q>) -> Vec<Policy> {
    let n = g.n_nodes();
    let sizes: Vec<usize> = (0..n).map(|x| g.controls(x).len()).collect();
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        out.push(Policy::new(cur.clone()));
        let mut i = 0;
        while i < n {
            cur[i] += 1;
            if cur[i] < sizes[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

fn value(j: &[Q], y: Node) -> Q {
    match y {
        Node::Dest => q(0),
        Node::State(i) => j[i],
    }
}

/// `max_y [g + J(y)]` on finite values.
pub fn h(g: &RspGraph<Q>, x: usize, u: usize, j: &[Q]) -> Q {
    g.successors(x, u).iter().map(|s| s.length + value(j, s.to)).max().unwrap()
}

pub fn t_map(g: &RspGraph<Q>, j: &[Q]) -> Vec<Q> {
    (0..g.n_nodes()).map(|x| (0..g.controls(x).len()).map(|u| h(g, x, u, j)).min().unwrap()).collect()
}

pub fn t_mu(g: &RspGraph<Q>, mu: &Policy, j: &[Q]) -> Vec<Q> {
    (0..g.n_nodes()).map(|x| h(g, x, mu.control(x), j)).collect()
}

/// Longest path to `t` under `μ` by memoized recursion; `None` when `μ` has a cycle.
pub fn eval_by_recursion(g: &RspGraph<Q>, mu: &Policy) -> Option<Vec<Q>> {
    fn visit(g: &RspGraph<Q>, mu: &Policy, x: usize, memo: &mut Vec<Option<Q>>, open: &mut Vec<bool>) -> Option<Q> {
        if let Some(v) = memo[x] {
            return Some(v);
        }
        if open[x] {
            return None;
        }
        open[x] = true;
        let mut best: Option<Q> = None;
        for s in g.successors(x, mu.control(x)) {
            let tail = match s.to {
                Node::Dest => q(0),
                Node::State(y) => visit(g, mu, y, memo, open)?,
            };
            let v = s.length + tail;
            best = Some(best.map_or(v, |b| b.max(v)));
        }
        open[x] = false;
        memo[x] = best;
        best
    }
    let n = g.n_nodes();
    let mut memo = vec![None; n];
    let mut open = vec![false; n];
    (0..n).map(|x| visit(g, mu, x, &mut memo, &mut open)).collect()
}

pub struct Optimum {
    pub j_hat: Vec<Q>,
    /// Proper policies attaining `j_hat` at every node.
    pub optimal: Vec<Policy>,
    pub proper: Vec<(Policy, Vec<Q>)>,
}

/// Best proper cost by enumeration. `None` when no policy is proper.
pub fn optimum(g: &RspGraph<Q>) -> Option<Optimum> {
    let proper: Vec<(Policy, Vec<Q>)> =
        all_policies(g).into_iter().filter_map(|mu| eval_by_recursion(g, &mu).map(|j| (mu, j))).collect();
    let first = proper.first()?.1.clone();
    let j_hat: Vec<Q> = proper.iter().fold(first, |acc, (_, j)| acc.iter().zip(j).map(|(a, b)| *a.min(b)).collect());
    let optimal = proper.iter().filter(|(_, j)| *j == j_hat).map(|(mu, _)| mu.clone()).collect();
    Some(Optimum { j_hat, optimal, proper })
}

/// Lengths of all simple cycles in the union of every control's arcs.
/// A simple cycle there is a cycle of the policy using those controls.
#[allow(clippy::needless_range_loop)]
pub fn simple_cycle_lengths(g: &RspGraph<Q>) -> Vec<Q> {
    let n = g.n_nodes();
    let mut adj: Vec<Vec<(usize, Q)>> = vec![Vec::new(); n];
    for x in 0..n {
        for c in g.controls(x) {
            for s in &c.successors {
                if let Node::State(y) = s.to {
                    adj[x].push((y, s.length));
                }
            }
        }
    }
    fn walk(adj: &[Vec<(usize, Q)>], start: usize, x: usize, len: Q, seen: &mut Vec<bool>, out: &mut Vec<Q>) {
        for &(y, w) in &adj[x] {
            if y == start {
                out.push(len + w);
            } else if y > start && !seen[y] {
                seen[y] = true;
                walk(adj, start, y, len + w, seen, out);
                seen[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..n {
        let mut seen = vec![false; n];
        seen[s] = true;
        walk(&adj, s, s, q(0), &mut seen, &mut out);
    }
    out
}

pub fn some_policy_proper(g: &RspGraph<Q>) -> bool {
    all_policies(g).iter().any(|mu| eval_by_recursion(g, mu).is_some())
}

/// Proper policy exists and every cycle is positive.
pub fn positive_cycles_only(g: &RspGraph<Q>) -> bool {
    some_policy_proper(g) && simple_cycle_lengths(g).iter().all(|&c| c > q(0))
}

/// Proper policy exists and every cycle is nonnegative.
pub fn nonnegative_cycles_only(g: &RspGraph<Q>) -> bool {
    some_policy_proper(g) && simple_cycle_lengths(g).iter().all(|&c| c >= q(0))
}

pub fn has_zero_length_cycle(g: &RspGraph<Q>) -> bool {
    simple_cycle_lengths(g).contains(&q(0))
}

pub fn all_lengths_nonnegative(g: &RspGraph<Q>) -> bool {
    (0..g.n_nodes()).all(|x| g.controls(x).iter().all(|c| c.successors.iter().all(|s| s.length >= q(0))))
}

/// `X_1, X_2, …`: nodes whose successors under `μ` all lie in earlier layers.
pub fn layers(g: &RspGraph<Q>, mu: &Policy) -> Vec<Vec<usize>> {
    let n = g.n_nodes();
    let mut layer_of: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::new();
    while layer_of.len() < n {
        let k = out.len();
        let next: Vec<usize> = (0..n)
            .filter(|x| !layer_of.contains_key(x))
            .filter(|&x| {
                g.successors(x, mu.control(x)).iter().all(|s| match s.to {
                    Node::Dest => true,
                    Node::State(y) => layer_of.get(&y).is_some_and(|&l| l < k),
                })
            })
            .collect();
        assert!(!next.is_empty(), "layers need a proper policy");
        for &x in &next {
            layer_of.insert(x, k);
        }
        out.push(next);
    }
    out
}

/// Random instances with every cycle positive: `N = 1 + seed % 5`, up to
/// three controls and three successors, integer lengths in `[-3, 9]`.
pub fn positive_cycle_suite(count: u64) -> Vec<RspGraph<Q>> {
    (0..count)
        .map(|seed| {
            let spec = GenSpec::new(seed, 1 + (seed % 5) as usize);
            let g: RspGraph<Q> = gen_random(&spec).expect("generator finds an instance");
            assert!(positive_cycles_only(&g), "seed {seed} violates the positive-cycle filter");
            g
        })
        .collect()
}

pub fn dominated(a: &[Q], b: &[Q]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}
