//! Deterministic event sequences for the asynchronous algorithms.
//!
//! A schedule is replayed cyclically. Each event names a set of nodes and
//! whether they do a policy improvement (a value-iteration step) or a policy
//! evaluation step.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::RspError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Improve,
    Evaluate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub nodes: Vec<usize>,
    pub phase: Phase,
}

impl Event {
    pub fn improve(nodes: Vec<usize>) -> Self {
        Event { nodes, phase: Phase::Improve }
    }

    pub fn evaluate(nodes: Vec<usize>) -> Self {
        Event { nodes, phase: Phase::Evaluate }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    events: Vec<Event>,
}

impl Schedule {
    pub fn new(events: Vec<Event>) -> Self {
        Schedule { events }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// One improve event per node, in index order.
    pub fn round_robin(n: usize) -> Self {
        Self::from_order(&(0..n).collect::<Vec<_>>())
    }

    /// One improve event per listed node.
    pub fn from_order(order: &[usize]) -> Self {
        Schedule { events: order.iter().map(|&x| Event::improve(vec![x])).collect() }
    }

    /// A single event covering every node.
    pub fn all_at_once(n: usize, phase: Phase) -> Self {
        Schedule { events: vec![Event { nodes: (0..n).collect(), phase }] }
    }

    /// Improve all nodes, then evaluate all nodes.
    pub fn improve_then_evaluate(n: usize) -> Self {
        let all: Vec<usize> = (0..n).collect();
        Schedule { events: vec![Event::improve(all.clone()), Event::evaluate(all)] }
    }

    /// `len` events, each a random partition block with a random phase.
    /// Every block receives at least one improve and one evaluate event.
    pub fn random_fair(partition: &[Vec<usize>], len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = partition.len();
        let mut events: Vec<Event> = Vec::with_capacity(len.max(2 * m));
        for block in partition {
            events.push(Event::improve(block.clone()));
            events.push(Event::evaluate(block.clone()));
        }
        while events.len() < len {
            let block = partition[rng.gen_range(0..m)].clone();
            let phase = if rng.gen_bool(0.5) { Phase::Improve } else { Phase::Evaluate };
            events.push(Event { nodes: block, phase });
        }
        events.shuffle(&mut rng);
        Schedule { events }
    }

    /// Longest run of consecutive events, under cyclic replay, in which node `x`
    /// gets no event of the given phase. `None` if it never gets one.
    pub fn max_gap(&self, x: usize, phase: Phase) -> Option<usize> {
        let hits: Vec<usize> = self
            .events
            .iter()
            .enumerate()
            .filter(|(_, e)| e.phase == phase && e.nodes.contains(&x))
            .map(|(i, _)| i)
            .collect();
        let first = *hits.first()?;
        let len = self.events.len();
        let mut gap = first + len - hits[hits.len() - 1] - 1;
        for w in hits.windows(2) {
            gap = gap.max(w[1] - w[0] - 1);
        }
        Some(gap)
    }

    /// Checks node ranges and that every node gets an improve event at least
    /// once in every `window` consecutive events (default: the schedule length).
    pub fn check_fair(&self, n: usize, window: Option<usize>) -> Result<(), RspError> {
        if self.events.is_empty() {
            return Err(RspError::InvalidSchedule("empty schedule".into()));
        }
        let window = window.unwrap_or(self.events.len());
        for (i, e) in self.events.iter().enumerate() {
            if e.nodes.is_empty() {
                return Err(RspError::InvalidSchedule(format!("event {i} has no nodes")));
            }
            if let Some(&x) = e.nodes.iter().find(|&&x| x >= n) {
                return Err(RspError::InvalidSchedule(format!("event {i} names node {}", x + 1)));
            }
        }
        for x in 0..n {
            match self.max_gap(x, Phase::Improve) {
                None => {
                    return Err(RspError::InvalidSchedule(format!("node {} is never improved", x + 1)));
                }
                Some(gap) if gap >= window => {
                    return Err(RspError::InvalidSchedule(format!(
                        "node {} goes {gap} events without improvement (window {window})",
                        x + 1
                    )));
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}

/// Singleton blocks `{0}, {1}, …`.
pub fn singleton_partition(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|x| vec![x]).collect()
}

/// Random partition of `0..n` into at most `blocks` nonempty blocks.
pub fn random_partition(n: usize, blocks: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(&mut rng);
    let m = blocks.clamp(1, n.max(1));
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, x) in nodes.into_iter().enumerate() {
        let b = if i < m { i } else { rng.gen_range(0..m) };
        out[b].push(x);
    }
    for b in &mut out {
        b.sort_unstable();
    }
    out.retain(|b| !b.is_empty());
    out
}
