//! Dijkstra-like label setting for nonnegative arc lengths.
//!
//! A node's label can only be set from a control whose whole successor set is
//! already permanent, so a node becomes permanent only once the adversary
//! can no longer send it anywhere unlabeled.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::bellman::greedy_policy;
use crate::cost::{Cost, CostVector};
use crate::error::RspError;
use crate::graph::{Node, Policy, RspGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
struct Entry<S> {
    label: Cost<S>,
    node: Node,
}

impl<S: Scalar> Eq for Entry<S> {}

impl<S: Scalar> PartialOrd for Entry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for Entry<S> {
    // Reversed so the max-heap pops the least label, then `t`, then the lowest node.
    fn cmp(&self, other: &Self) -> Ordering {
        other.label.total_cmp(&self.label).then_with(|| other.node.cmp(&self.node))
    }
}

/// One label update `J(x): old → new`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelUpdate<S> {
    pub node: usize,
    pub old: Cost<S>,
    pub new: Cost<S>,
}

/// What one iteration did.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<S> {
    pub entered: Node,
    pub label: Cost<S>,
    pub updates: Vec<LabelUpdate<S>>,
}

/// Labels, candidate set `V` and permanent set `W`.
#[derive(Debug, Clone)]
pub struct LabelState<S> {
    labels: Vec<Cost<S>>,
    in_v: Vec<bool>,
    t_in_v: bool,
    in_w: Vec<bool>,
    t_in_w: bool,
    heap: BinaryHeap<Entry<S>>,
    /// `pending[x][u]`: successors of `(x,u)` not yet in `W`.
    pending: Vec<Vec<usize>>,
    /// `preds[y]` for `y` in `0..n`, and `preds[n]` for `t`: the `(x,u)` with `y ∈ Y(x,u)`.
    preds: Vec<Vec<(usize, usize)>>,
    entry_order: Vec<Node>,
}

impl<S: Scalar> LabelState<S> {
    /// `V = {t}`, `J(t) = 0`, every other label `+inf`, `W` empty.
    pub fn new(g: &RspGraph<S>) -> Self {
        let n = g.n_nodes();
        let mut preds = vec![Vec::new(); n + 1];
        for x in 0..n {
            for (u, c) in g.controls(x).iter().enumerate() {
                for s in &c.successors {
                    preds[s.to.state().unwrap_or(n)].push((x, u));
                }
            }
        }
        let mut heap = BinaryHeap::new();
        heap.push(Entry { label: Cost::zero(), node: Node::Dest });
        LabelState {
            labels: vec![Cost::PosInf; n],
            in_v: vec![false; n],
            t_in_v: true,
            in_w: vec![false; n],
            t_in_w: false,
            heap,
            pending: (0..n).map(|x| g.controls(x).iter().map(|c| c.successors.len()).collect()).collect(),
            preds,
            entry_order: Vec::new(),
        }
    }

    pub fn label(&self, node: Node) -> Cost<S> {
        match node {
            Node::Dest => Cost::zero(),
            Node::State(x) => self.labels[x],
        }
    }

    pub fn labels(&self) -> CostVector<S> {
        CostVector::new(self.labels.clone())
    }

    pub fn in_candidates(&self, node: Node) -> bool {
        match node {
            Node::Dest => self.t_in_v,
            Node::State(x) => self.in_v[x],
        }
    }

    pub fn is_permanent(&self, node: Node) -> bool {
        match node {
            Node::Dest => self.t_in_w,
            Node::State(x) => self.in_w[x],
        }
    }

    pub fn candidates_empty(&self) -> bool {
        !self.t_in_v && !self.in_v.iter().any(|&b| b)
    }

    /// Nodes in the order they entered `W`.
    pub fn entry_order(&self) -> &[Node] {
        &self.entry_order
    }

    /// Removes the least-label candidate `y*`, makes it permanent, and relaxes
    /// every non-permanent `x` through the controls completed by `y*`.
    pub fn iterate(&mut self, g: &RspGraph<S>) -> Result<IterationRecord<S>, RspError> {
        let y_star = loop {
            let top = self.heap.pop().ok_or(RspError::EmptyCandidateSet)?;
            let live = self.in_candidates(top.node) && top.label == self.label(top.node);
            if live {
                break top.node;
            }
        };
        match y_star {
            Node::Dest => {
                self.t_in_v = false;
                self.t_in_w = true;
            }
            Node::State(y) => {
                self.in_v[y] = false;
                self.in_w[y] = true;
            }
        }
        self.entry_order.push(y_star);
        let label = self.label(y_star);

        let slot = y_star.state().unwrap_or(g.n_nodes());
        let mut completed: Vec<(usize, usize)> = Vec::new();
        for &(x, u) in &self.preds[slot] {
            self.pending[x][u] -= 1;
            if self.pending[x][u] == 0 && !self.in_w[x] {
                completed.push((x, u));
            }
        }
        // Group by node: candidate = min over completed controls of the worst successor.
        completed.sort_unstable();
        let mut updates = Vec::new();
        let mut i = 0;
        while i < completed.len() {
            let x = completed[i].0;
            let mut best = Cost::PosInf;
            while i < completed.len() && completed[i].0 == x {
                let u = completed[i].1;
                let worst = g
                    .successors(x, u)
                    .iter()
                    .map(|s| self.label(s.to).plus(s.length))
                    .reduce(Cost::max)
                    .expect("successor sets are nonempty");
                best = best.min(worst);
                i += 1;
            }
            if best.definitely_lt(&self.labels[x]) {
                updates.push(LabelUpdate { node: x, old: self.labels[x], new: best });
                self.labels[x] = best;
                self.in_v[x] = true;
                self.heap.push(Entry { label: best, node: Node::State(x) });
            }
        }
        Ok(IterationRecord { entered: y_star, label, updates })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DijkstraResult<S> {
    pub cost: CostVector<S>,
    pub policy: Policy,
    pub entry_order: Vec<Node>,
    pub iterations: Vec<IterationRecord<S>>,
}

/// Runs label setting until `V` is empty. Requires nonnegative lengths; the
/// run must take exactly `N + 1` iterations, otherwise some node cannot force
/// termination and [`RspError::PrematureExhaustion`] is returned.
pub fn dijkstra_run<S: Scalar>(g: &RspGraph<S>) -> Result<DijkstraResult<S>, RspError> {
    g.ensure_valid()?;
    if let Some((x, _, _)) = g.arcs().find(|(_, _, s)| s.length < S::zero()) {
        return Err(RspError::NegativeArc { node: Node::State(x) });
    }
    let n = g.n_nodes();
    let mut state = LabelState::new(g);
    let mut iterations = Vec::with_capacity(n + 1);
    while !state.candidates_empty() {
        iterations.push(state.iterate(g)?);
    }
    if iterations.len() != n + 1 {
        return Err(RspError::PrematureExhaustion { entered: iterations.len(), total: n + 1 });
    }
    let cost = state.labels();
    Ok(DijkstraResult { policy: greedy_policy(g, &cost), cost, entry_order: state.entry_order, iterations })
}
