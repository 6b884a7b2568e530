//! Graph and policy data model.
//!
//! Nondestination nodes are numbered `0..n` internally and printed 1-based;
//! the destination is [`Node::Dest`]. The destination has no stored controls:
//! it is absorbing and cost-free, and its self-arc is implicit.

mod assumption;
mod subgraph;

pub use assumption::{
    augment_termination, check_assumption, default_termination_cost, proper_policy_exists, Assumption, AssumptionReport,
};
pub use subgraph::{
    classify_policy, cycle_extremes, destination_connected, is_proper, policy_subgraph, CycleExtremes,
    PolicyClassification, PolicySubgraph,
};

use std::fmt;

use crate::error::RspError;
use crate::scalar::Scalar;

/// A node of `X ∪ {t}`. The derived order puts the destination first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Dest,
    State(usize),
}

impl Node {
    pub fn state(self) -> Option<usize> {
        match self {
            Node::Dest => None,
            Node::State(i) => Some(i),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Dest => f.write_str("t"),
            Node::State(i) => write!(f, "{}", i + 1),
        }
    }
}

/// One element `y` of a successor set together with its arc length `g(x,u,y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Successor<S> {
    pub to: Node,
    pub length: S,
}

/// A control `u ∈ U(x)` and the adversary's choices `Y(x,u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Control<S> {
    pub name: String,
    pub successors: Vec<Successor<S>>,
}

/// A finite graph with set-membership successor uncertainty.
///
/// Control and successor order is significant: every tie-break in the
/// solvers picks the lowest index.
#[derive(Debug, Clone, PartialEq)]
pub struct RspGraph<S> {
    controls: Vec<Vec<Control<S>>>,
}

impl<S: Scalar> RspGraph<S> {
    /// A graph with `n` nondestination nodes and no controls yet.
    pub fn new(n: usize) -> Self {
        RspGraph { controls: (0..n).map(|_| Vec::new()).collect() }
    }

    pub fn n_nodes(&self) -> usize {
        self.controls.len()
    }

    pub fn controls(&self, x: usize) -> &[Control<S>] {
        &self.controls[x]
    }

    pub fn control(&self, x: usize, u: usize) -> &Control<S> {
        &self.controls[x][u]
    }

    pub fn successors(&self, x: usize, u: usize) -> &[Successor<S>] {
        &self.controls[x][u].successors
    }

    pub fn control_index(&self, x: usize, name: &str) -> Option<usize> {
        self.controls[x].iter().position(|c| c.name == name)
    }

    /// Appends a control with an empty successor set and returns its index.
    pub fn add_control(&mut self, x: usize, name: impl Into<String>) -> usize {
        self.controls[x].push(Control { name: name.into(), successors: Vec::new() });
        self.controls[x].len() - 1
    }

    pub fn add_arc(&mut self, x: usize, u: usize, to: Node, length: S) {
        self.controls[x][u].successors.push(Successor { to, length });
    }

    /// Appends a control together with its successor set.
    pub fn add_control_with(
        &mut self,
        x: usize,
        name: impl Into<String>,
        arcs: impl IntoIterator<Item = (Node, S)>,
    ) -> usize {
        let u = self.add_control(x, name);
        for (to, length) in arcs {
            self.add_arc(x, u, to, length);
        }
        u
    }

    /// Iterates `(x, u, successor)` over every stored arc.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &Successor<S>)> {
        self.controls.iter().enumerate().flat_map(|(x, cs)| {
            cs.iter().enumerate().flat_map(move |(u, c)| c.successors.iter().map(move |s| (x, u, s)))
        })
    }

    pub fn max_abs_length(&self) -> S {
        self.arcs().map(|(_, _, s)| s.length.abs()).fold(S::zero(), |m, v| if v > m { v } else { m })
    }

    pub fn min_length(&self) -> Option<S> {
        self.arcs().map(|(_, _, s)| s.length).fold(None, |m, v| match m {
            Some(m) if m <= v => Some(m),
            _ => Some(v),
        })
    }

    /// Number of policies `∏ |U(x)|`, saturating.
    pub fn policy_count(&self) -> u128 {
        self.controls.iter().fold(1u128, |acc, cs| acc.saturating_mul(cs.len() as u128))
    }

    /// Same structure with every arc length transformed.
    pub fn map_lengths<T: Scalar>(&self, mut f: impl FnMut(usize, usize, S) -> T) -> RspGraph<T> {
        RspGraph {
            controls: self
                .controls
                .iter()
                .enumerate()
                .map(|(x, cs)| {
                    cs.iter()
                        .enumerate()
                        .map(|(u, c)| Control {
                            name: c.name.clone(),
                            successors: c
                                .successors
                                .iter()
                                .map(|s| Successor { to: s.to, length: f(x, u, s.length) })
                                .collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// All structural problems; empty when the graph is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n_nodes();
        let mut out = Vec::new();
        if n == 0 {
            out.push(Violation::NoNodes);
        }
        for (x, cs) in self.controls.iter().enumerate() {
            if cs.is_empty() {
                out.push(Violation::EmptyControlSet { node: x });
            }
            for (u, c) in cs.iter().enumerate() {
                if cs[..u].iter().any(|d| d.name == c.name) {
                    out.push(Violation::DuplicateControl { node: x, name: c.name.clone() });
                }
                if c.successors.is_empty() {
                    out.push(Violation::EmptySuccessorSet { node: x, control: c.name.clone() });
                }
                for (k, s) in c.successors.iter().enumerate() {
                    if let Node::State(y) = s.to {
                        if y >= n {
                            out.push(Violation::DanglingNode { node: x, control: c.name.clone(), target: y });
                        }
                    }
                    if c.successors[..k].iter().any(|p| p.to == s.to) {
                        out.push(Violation::DuplicateSuccessor { node: x, control: c.name.clone(), target: s.to });
                    }
                    if !s.length.is_finite_value() {
                        out.push(Violation::NonFiniteLength { node: x, control: c.name.clone() });
                    }
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), RspError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(RspError::InvalidGraph(v))
        }
    }

    /// Checks that `policy` picks an existing control at every node.
    pub fn check_policy(&self, policy: &Policy) -> Result<(), RspError> {
        if policy.len() != self.n_nodes() {
            return Err(RspError::InvalidPolicy(format!(
                "policy covers {} nodes, graph has {}",
                policy.len(),
                self.n_nodes()
            )));
        }
        for (x, &u) in policy.choices().iter().enumerate() {
            if u >= self.controls[x].len() {
                return Err(RspError::InvalidPolicy(format!("node {} has no control index {u}", x + 1)));
            }
        }
        Ok(())
    }

    /// Every policy exactly once, in lexicographic order of control indices.
    pub fn policies(&self) -> PolicyIter {
        PolicyIter::new(self.controls.iter().map(Vec::len).collect())
    }

    /// Names of the controls a policy picks, in node order.
    pub fn policy_names(&self, policy: &Policy) -> Vec<&str> {
        policy.choices().iter().enumerate().map(|(x, &u)| self.controls[x][u].name.as_str()).collect()
    }
}

/// A structural problem found by [`RspGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoNodes,
    EmptyControlSet {
        node: usize,
    },
    EmptySuccessorSet {
        node: usize,
        control: String,
    },
    DanglingNode {
        node: usize,
        control: String,
        target: usize,
    },
    DuplicateSuccessor {
        node: usize,
        control: String,
        target: Node,
    },
    DuplicateControl {
        node: usize,
        name: String,
    },
    NonFiniteLength {
        node: usize,
        control: String,
    },
    /// A file referenced a control that was never declared.
    UnknownControl {
        node: usize,
        name: String,
    },
    /// A file referenced a node outside `1..=N`.
    NodeOutOfRange {
        line: usize,
        node: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoNodes => write!(f, "graph has no nondestination nodes"),
            Violation::EmptyControlSet { node } => {
                write!(f, "empty control set at node {}", node + 1)
            }
            Violation::EmptySuccessorSet { node, control } => {
                write!(f, "empty successor set for control {control} at node {}", node + 1)
            }
            Violation::DanglingNode { node, control, target } => {
                write!(f, "dangling node {} in successors of control {control} at node {}", target + 1, node + 1)
            }
            Violation::DuplicateSuccessor { node, control, target } => {
                write!(f, "successor {target} listed twice for control {control} at node {}", node + 1)
            }
            Violation::DuplicateControl { node, name } => {
                write!(f, "control {name} declared twice at node {}", node + 1)
            }
            Violation::NonFiniteLength { node, control } => {
                write!(f, "non-finite arc length for control {control} at node {}", node + 1)
            }
            Violation::UnknownControl { node, name } => {
                write!(f, "unknown control {name} at node {}", node + 1)
            }
            Violation::NodeOutOfRange { line, node } => {
                write!(f, "line {line}: dangling node {node}")
            }
        }
    }
}

/// A stationary policy: one control index per nondestination node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Policy(Vec<usize>);

impl Policy {
    pub fn new(choices: Vec<usize>) -> Self {
        Policy(choices)
    }

    /// The policy that picks control `u` everywhere.
    pub fn uniform(n: usize, u: usize) -> Self {
        Policy(vec![u; n])
    }

    pub fn control(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn set(&mut self, x: usize, u: usize) {
        self.0[x] = u;
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, u) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str("]")
    }
}

/// Odometer over all policies, last node varying fastest.
#[derive(Debug, Clone)]
pub struct PolicyIter {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl PolicyIter {
    fn new(sizes: Vec<usize>) -> Self {
        let next = if sizes.contains(&0) { None } else { Some(vec![0; sizes.len()]) };
        PolicyIter { sizes, next }
    }
}

impl Iterator for PolicyIter {
    type Item = Policy;

    fn next(&mut self) -> Option<Policy> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.sizes[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Policy(current))
    }
}
