use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;

use crate::cost::Cost;
use crate::error::RspError;
use crate::graph::{Node, Policy, RspGraph};
use crate::scalar::Scalar;

/// The arcs `A_μ` of a policy. The self-arc `(t,t)` is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicySubgraph<S> {
    /// `out[x]` lists `(y, g(x,μ(x),y))` in successor order.
    out: Vec<Vec<(Node, S)>>,
}

impl<S: Scalar> PolicySubgraph<S> {
    pub fn n_nodes(&self) -> usize {
        self.out.len()
    }

    pub fn successors(&self, x: usize) -> &[(Node, S)] {
        &self.out[x]
    }

    /// All `(x, y)` pairs, ordered by `x` then successor order.
    pub fn arcs(&self) -> Vec<(Node, Node)> {
        self.out.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |(y, _)| (Node::State(x), *y))).collect()
    }

    /// The arcs among nondestination nodes as a petgraph digraph.
    fn internal(&self) -> DiGraph<(), S, usize> {
        let mut d = DiGraph::with_capacity(self.out.len(), 0);
        for _ in 0..self.out.len() {
            d.add_node(());
        }
        for (x, ys) in self.out.iter().enumerate() {
            for (y, w) in ys {
                if let Node::State(y) = y {
                    d.add_edge(NodeIndex::new(x), NodeIndex::new(*y), *w);
                }
            }
        }
        d
    }

    /// `true` iff no directed cycle exists among nondestination nodes.
    pub fn is_acyclic(&self) -> bool {
        toposort(&self.internal(), None).is_ok()
    }

    /// Nondestination nodes in an order where every arc points forward, or `None` if cyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        toposort(&self.internal(), None).ok().map(|v| v.into_iter().map(NodeIndex::index).collect())
    }

    /// Nodes from which `t` is reachable within `A_μ`.
    pub fn reaches_destination(&self) -> Vec<bool> {
        let d = self.internal();
        let mut seen = vec![false; self.out.len()];
        let mut stack: Vec<usize> =
            (0..self.out.len()).filter(|&x| self.out[x].iter().any(|(y, _)| *y == Node::Dest)).collect();
        for &x in &stack {
            seen[x] = true;
        }
        while let Some(y) = stack.pop() {
            for x in d.neighbors_directed(NodeIndex::new(y), Direction::Incoming) {
                if !seen[x.index()] {
                    seen[x.index()] = true;
                    stack.push(x.index());
                }
            }
        }
        seen
    }

    /// Strongly connected components that contain at least one cycle, with
    /// their extreme cycle means.
    pub fn cyclic_components(&self) -> Vec<ComponentCycles<S>> {
        let d = self.internal();
        let edges: Vec<(usize, usize, S)> =
            d.edge_references().map(|e| (e.source().index(), e.target().index(), *e.weight())).collect();
        cyclic_components(self.out.len(), &edges)
    }
}

/// A strongly connected component that contains a cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentCycles<S> {
    pub nodes: Vec<usize>,
    pub min_mean: S,
    pub max_mean: S,
}

/// Cyclic SCCs of an arbitrary arc list over nodes `0..n`. Parallel arcs are allowed.
pub fn cyclic_components<S: Scalar>(n: usize, edges: &[(usize, usize, S)]) -> Vec<ComponentCycles<S>> {
    let mut d: DiGraph<(), S, usize> = DiGraph::with_capacity(n, edges.len());
    for _ in 0..n {
        d.add_node(());
    }
    for &(a, b, w) in edges {
        d.add_edge(NodeIndex::new(a), NodeIndex::new(b), w);
    }
    let mut out = Vec::new();
    for comp in tarjan_scc(&d) {
        let mut nodes: Vec<usize> = comp.iter().map(|i| i.index()).collect();
        nodes.sort_unstable();
        let mut local = vec![usize::MAX; n];
        for (k, &v) in nodes.iter().enumerate() {
            local[v] = k;
        }
        let inner: Vec<(usize, usize, S)> = edges
            .iter()
            .filter(|(a, b, _)| local[*a] != usize::MAX && local[*b] != usize::MAX)
            .map(|&(a, b, w)| (local[a], local[b], w))
            .collect();
        if inner.is_empty() {
            continue;
        }
        let negated: Vec<(usize, usize, S)> = inner.iter().map(|&(a, b, w)| (a, b, -w)).collect();
        let min_mean = karp_min_mean(nodes.len(), &inner);
        let max_mean = -karp_min_mean(nodes.len(), &negated);
        out.push(ComponentCycles { nodes, min_mean, max_mean });
    }
    out
}

/// Karp's minimum cycle mean on a strongly connected graph with at least one arc.
fn karp_min_mean<S: Scalar>(m: usize, edges: &[(usize, usize, S)]) -> S {
    // d[k][v]: least weight of a walk with exactly k arcs from node 0 to v.
    let mut d: Vec<Vec<Option<S>>> = vec![vec![None; m]; m + 1];
    d[0][0] = Some(S::zero());
    for k in 1..=m {
        for &(a, b, w) in edges {
            if let Some(da) = d[k - 1][a] {
                let cand = da + w;
                if d[k][b].is_none_or(|cur| cand < cur) {
                    d[k][b] = Some(cand);
                }
            }
        }
    }
    let mut best: Option<S> = None;
    for v in 0..m {
        let Some(dm) = d[m][v] else { continue };
        let mut worst: Option<S> = None;
        for (k, row) in d.iter().enumerate().take(m) {
            if let Some(dk) = row[v] {
                let mean = (dm - dk) / S::from_usize(m - k).expect("small integer");
                if worst.is_none_or(|cur| mean > cur) {
                    worst = Some(mean);
                }
            }
        }
        if let Some(w) = worst {
            if best.is_none_or(|cur| w < cur) {
                best = Some(w);
            }
        }
    }
    best.expect("strongly connected component with an arc has a cycle")
}

/// Extreme cycle means of `A_μ`; both `None` when the subgraph is acyclic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleExtremes<S> {
    pub min_mean: Option<S>,
    pub max_mean: Option<S>,
}

impl<S: Scalar> CycleExtremes<S> {
    pub fn has_cycles(&self) -> bool {
        self.min_mean.is_some()
    }

    pub fn all_positive(&self) -> bool {
        self.min_mean.is_none_or(|m| m > S::zero())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.min_mean.is_none_or(|m| m >= S::zero())
    }

    pub fn all_negative(&self) -> bool {
        self.max_mean.is_none_or(|m| m < S::zero())
    }
}

/// Verdict on a single policy.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyClassification<S> {
    pub is_proper: bool,
    pub destination_connected: bool,
    /// `+inf` when acyclic.
    pub min_cycle_mean: Cost<S>,
    /// `-inf` when acyclic.
    pub max_cycle_mean: Cost<S>,
    pub regular: bool,
}

/// Builds `A_μ`.
pub fn policy_subgraph<S: Scalar>(g: &RspGraph<S>, mu: &Policy) -> Result<PolicySubgraph<S>, RspError> {
    g.check_policy(mu)?;
    let out =
        (0..g.n_nodes()).map(|x| g.successors(x, mu.control(x)).iter().map(|s| (s.to, s.length)).collect()).collect();
    Ok(PolicySubgraph { out })
}

/// `true` iff `A_μ` has no cycle. Panics if `mu` is not a valid policy for `g`.
pub fn is_proper<S: Scalar>(g: &RspGraph<S>, mu: &Policy) -> bool {
    policy_subgraph(g, mu).expect("valid policy").is_acyclic()
}

pub fn cycle_extremes<S: Scalar>(sub: &PolicySubgraph<S>) -> CycleExtremes<S> {
    let comps = sub.cyclic_components();
    CycleExtremes {
        min_mean: comps.iter().map(|c| c.min_mean).reduce(|a, b| if b < a { b } else { a }),
        max_mean: comps.iter().map(|c| c.max_mean).reduce(|a, b| if b > a { b } else { a }),
    }
}

/// `true` iff `t` is reachable from every node within `A_μ`.
pub fn destination_connected<S: Scalar>(sub: &PolicySubgraph<S>) -> bool {
    sub.reaches_destination().into_iter().all(|b| b)
}

/// Regular iff proper, or destination-connected with every cycle negative.
pub fn classify_policy<S: Scalar>(g: &RspGraph<S>, mu: &Policy) -> Result<PolicyClassification<S>, RspError> {
    let sub = policy_subgraph(g, mu)?;
    let is_proper = sub.is_acyclic();
    let connected = destination_connected(&sub);
    let ext = cycle_extremes(&sub);
    Ok(PolicyClassification {
        is_proper,
        destination_connected: connected,
        min_cycle_mean: ext.min_mean.map_or(Cost::PosInf, Cost::Finite),
        max_cycle_mean: ext.max_mean.map_or(Cost::NegInf, Cost::Finite),
        regular: is_proper || (connected && ext.all_negative()),
    })
}
