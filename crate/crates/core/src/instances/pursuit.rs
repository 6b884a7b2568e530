use std::fmt;

use petgraph::algo::floyd_warshall;
use petgraph::graph::UnGraph;

use crate::error::RspError;
use crate::graph::{is_proper, policy_subgraph, proper_policy_exists, Node, Policy, RspGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Pursuer moves, in control order.
const MOVES: [(&str, isize, isize); 4] = [("up", -1, 0), ("down", 1, 0), ("left", 0, -1), ("right", 0, 1)];

#[derive(Debug, Clone, PartialEq)]
pub struct PursuitSpec<S> {
    pub width: usize,
    pub height: usize,
    pub obstacles: Vec<Cell>,
    /// Cost of a `give_up` control added at every non-capture state, if any.
    pub give_up_cost: Option<S>,
}

impl<S> PursuitSpec<S> {
    pub fn open(width: usize, height: usize) -> Self {
        PursuitSpec { width, height, obstacles: Vec::new(), give_up_cost: None }
    }
}

/// A pursuit-evasion game on a grid.
///
/// Nodes are pairs `(pursuer, evader)` of free cells; pair `(i, j)` of
/// row-major free-cell indices is node `i * cells.len() + j`. At a capture
/// state the only control is `capture`, going to `t` at cost 0. Elsewhere the
/// pursuer picks a move to an adjacent free cell at cost 1, and the evader
/// answers by staying or stepping to an adjacent free cell. Landing on the
/// evader leads to the capture state.
#[derive(Debug, Clone, PartialEq)]
pub struct PursuitInstance<S> {
    pub graph: RspGraph<S>,
    /// Chases along a shortest path to where the evader currently is.
    pub base: Policy,
    /// Free cells in row-major order.
    pub cells: Vec<Cell>,
}

impl<S> PursuitInstance<S> {
    pub fn node(&self, pursuer: Cell, evader: Cell) -> Option<usize> {
        let i = self.cells.binary_search(&pursuer).ok()?;
        let j = self.cells.binary_search(&evader).ok()?;
        Some(i * self.cells.len() + j)
    }

    pub fn cells_of(&self, node: usize) -> (Cell, Cell) {
        let m = self.cells.len();
        (self.cells[node / m], self.cells[node % m])
    }

    pub fn is_capture(&self, node: usize) -> bool {
        let m = self.cells.len();
        node / m == node % m
    }
}

pub fn gen_pursuit<S: Scalar>(spec: &PursuitSpec<S>) -> Result<PursuitInstance<S>, RspError> {
    if spec.width == 0 || spec.height == 0 {
        return Err(RspError::InvalidGrid("grid must have at least one cell".into()));
    }
    if let Some(c) = spec.obstacles.iter().find(|c| c.row >= spec.height || c.col >= spec.width) {
        return Err(RspError::InvalidGrid(format!("obstacle {c} outside the grid")));
    }
    let cells: Vec<Cell> = (0..spec.height)
        .flat_map(|r| (0..spec.width).map(move |c| Cell::new(r, c)))
        .filter(|c| !spec.obstacles.contains(c))
        .collect();
    if cells.is_empty() {
        return Err(RspError::InvalidGrid("every cell is blocked".into()));
    }
    let m = cells.len();
    let index = |r: isize, c: isize| -> Option<usize> {
        if r < 0 || c < 0 {
            return None;
        }
        cells.binary_search(&Cell::new(r as usize, c as usize)).ok()
    };
    // neighbors[i]: (move name, cell index) in MOVES order.
    let neighbors: Vec<Vec<(&str, usize)>> = cells
        .iter()
        .map(|c| {
            MOVES
                .iter()
                .filter_map(|&(name, dr, dc)| Some((name, index(c.row as isize + dr, c.col as isize + dc)?)))
                .collect()
        })
        .collect();

    let mut grid = UnGraph::<(), u32>::with_capacity(m, 2 * m);
    let ids: Vec<_> = (0..m).map(|_| grid.add_node(())).collect();
    for (i, ns) in neighbors.iter().enumerate() {
        for &(_, j) in ns {
            if i < j {
                grid.add_edge(ids[i], ids[j], 1);
            }
        }
    }
    let all_pairs = floyd_warshall(&grid, |e| *e.weight()).expect("unit weights");
    let dist = |i: usize, j: usize| all_pairs.get(&(ids[i], ids[j])).copied().unwrap_or(u32::MAX);
    if (0..m).any(|j| dist(0, j) == u32::MAX) {
        return Err(RspError::InvalidGrid("free cells are not connected".into()));
    }

    let node = |p: usize, e: usize| Node::State(p * m + e);
    let mut graph = RspGraph::new(m * m);
    let mut chase = vec![0; m * m];
    for p in 0..m {
        for e in 0..m {
            let x = p * m + e;
            if p == e {
                graph.add_control_with(x, "capture", [(Node::Dest, S::zero())]);
                continue;
            }
            for &(name, q) in &neighbors[p] {
                let arcs: Vec<(Node, S)> = if q == e {
                    vec![(node(q, q), S::one())]
                } else {
                    std::iter::once(e)
                        .chain(neighbors[e].iter().map(|&(_, f)| f))
                        .map(|f| (node(q, f), S::one()))
                        .collect()
                };
                graph.add_control_with(x, name, arcs);
            }
            chase[x] = (0..neighbors[p].len())
                .min_by_key(|&u| dist(neighbors[p][u].1, e))
                .expect("connected grid with two cells has moves");
            if let Some(c) = spec.give_up_cost {
                graph.add_control_with(x, "give_up", [(Node::Dest, c)]);
            }
        }
    }

    let base = repair_base(&graph, Policy::new(chase))?;
    Ok(PursuitInstance { graph, base, cells })
}

/// Keeps the chase where it is proper, forces capture where the chase can
/// loop, and gives up where capture cannot be forced.
fn repair_base<S: Scalar>(g: &RspGraph<S>, chase: Policy) -> Result<Policy, RspError> {
    if is_proper(g, &chase) {
        return Ok(chase);
    }
    let n = g.n_nodes();
    let sub = policy_subgraph(g, &chase)?;
    let looping = reaches_cycle(n, |x| sub.successors(x).iter().filter_map(|(y, _)| y.state()).collect());

    let (forcible, _) = proper_policy_exists(g);
    let layer = forcing_layers(g);
    let stuck: Vec<usize> = (0..n).filter(|&x| layer[x].is_none()).collect();
    let give_up = |x: usize| g.control_index(x, "give_up");
    if !forcible && stuck.iter().any(|&x| give_up(x).is_none()) {
        return Err(RspError::NotForcible { states: stuck });
    }
    let mut base = chase;
    for x in (0..n).filter(|&x| looping[x]) {
        let u = match layer[x] {
            Some(k) => (0..g.controls(x).len())
                .find(|&u| {
                    g.successors(x, u).iter().all(|s| s.to.state().is_none_or(|y| layer[y].is_some_and(|l| l < k)))
                })
                .expect("layered node has a forcing control"),
            None => give_up(x).expect("checked above"),
        };
        base.set(x, u);
    }
    Ok(base)
}

/// Round in which each node joins the forcible set, if ever.
fn forcing_layers<S: Scalar>(g: &RspGraph<S>) -> Vec<Option<usize>> {
    let n = g.n_nodes();
    let mut layer: Vec<Option<usize>> = vec![None; n];
    for k in 1.. {
        let fresh: Vec<usize> = (0..n)
            .filter(|&x| layer[x].is_none())
            .filter(|&x| {
                g.controls(x)
                    .iter()
                    .any(|c| c.successors.iter().all(|s| s.to.state().is_none_or(|y| layer[y].is_some_and(|l| l < k))))
            })
            .collect();
        if fresh.is_empty() {
            break;
        }
        for x in fresh {
            layer[x] = Some(k);
        }
    }
    layer
}

fn reaches_cycle(n: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    // Nodes that survive repeated removal of sinks are exactly those reaching a cycle.
    let out: Vec<Vec<usize>> = (0..n).map(&succ).collect();
    let mut preds = vec![Vec::new(); n];
    let mut outdeg = vec![0usize; n];
    for (x, ys) in out.iter().enumerate() {
        outdeg[x] = ys.len();
        for &y in ys {
            preds[y].push(x);
        }
    }
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&x| outdeg[x] == 0).collect();
    while let Some(y) = stack.pop() {
        alive[y] = false;
        for &x in &preds[y] {
            outdeg[x] -= 1;
            if outdeg[x] == 0 {
                stack.push(x);
            }
        }
    }
    alive
}
