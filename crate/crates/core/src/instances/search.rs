use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::RspError;
use crate::graph::{Node, RspGraph};
use crate::scalar::Scalar;

/// Stop-or-continue search problems.
///
/// Every node gets a `stop` control (index 0) going straight to `t` at the
/// node's stopping cost, then up to `max_continue` controls whose successors
/// are other nodes chosen by the opponent. Stopping everywhere is proper, and
/// nonnegative move costs keep every cycle nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub seed: u64,
    pub n_nodes: usize,
    /// Inclusive range of integer stopping costs.
    pub stop_range: (i64, i64),
    /// Inclusive range of integer move costs.
    pub move_range: (i64, i64),
    pub max_continue: usize,
    pub max_branch: usize,
}

impl SearchSpec {
    pub fn new(seed: u64, n_nodes: usize) -> Self {
        SearchSpec { seed, n_nodes, stop_range: (0, 9), move_range: (0, 3), max_continue: 2, max_branch: 2 }
    }
}

pub fn gen_search<S: Scalar>(spec: &SearchSpec) -> Result<RspGraph<S>, RspError> {
    let (s_lo, s_hi) = spec.stop_range;
    let (m_lo, m_hi) = spec.move_range;
    if spec.n_nodes == 0 || s_lo < 0 || m_lo < 0 || s_lo > s_hi || m_lo > m_hi {
        return Err(RspError::InvalidParameter("need n >= 1 and nonempty nonnegative cost ranges".into()));
    }
    let n = spec.n_nodes;
    let int = |v: i64| S::from_i64(v).expect("small integer");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut g = RspGraph::new(n);
    for x in 0..n {
        g.add_control_with(x, "stop", [(Node::Dest, int(rng.gen_range(s_lo..=s_hi)))]);
        let k = if spec.max_continue == 0 { 0 } else { rng.gen_range(0..=spec.max_continue) };
        for u in 0..k {
            let b = rng.gen_range(1..=spec.max_branch.clamp(1, n));
            let mut ys: Vec<usize> = sample(&mut rng, n, b).into_vec();
            ys.sort_unstable();
            let arcs: Vec<(Node, S)> =
                ys.into_iter().map(|y| (Node::State(y), int(rng.gen_range(m_lo..=m_hi)))).collect();
            g.add_control_with(x, format!("search{}", u + 1), arcs);
        }
    }
    Ok(g)
}
