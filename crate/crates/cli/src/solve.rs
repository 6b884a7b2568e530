use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use rsp_core::bellman::{all_greedy_proper, apply_t, greedy_policy, proper_greedy_policy, some_proper_policy};
use rsp_core::dijkstra::dijkstra_run;
use rsp_core::graph::{is_proper, proper_policy_exists};
use rsp_core::perturbation::{solve_by_perturbation, PerturbOptions};
use rsp_core::pi::{pi_async, pi_proper, AsyncPiState};
use rsp_core::policy_eval::verify_bellman;
use rsp_core::schedule::{random_partition, singleton_partition, Event, Schedule};
use rsp_core::vi::{vi, vi_async, vi_from_infinity};
use rsp_core::{CostVector, Policy, RspError, RspGraph, Scalar};

use crate::error::{CliError, Result};
use crate::format::{write_costs, write_policy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Vi,
    ViAsync,
    Pi,
    PiAsync,
    Dijkstra,
    Perturb,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] =
        [Algorithm::Vi, Algorithm::ViAsync, Algorithm::Pi, Algorithm::PiAsync, Algorithm::Dijkstra, Algorithm::Perturb];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Vi => "vi",
            Algorithm::ViAsync => "vi-async",
            Algorithm::Pi => "pi",
            Algorithm::PiAsync => "pi-async",
            Algorithm::Dijkstra => "dijkstra",
            Algorithm::Perturb => "perturb",
        }
    }

    /// These methods find `J*` only when every improper policy has a positive
    /// cycle. A zero-length cycle among the minimizing controls means that
    /// guarantee does not apply. `pi` and `perturb` target the best proper
    /// cost instead and skip the check.
    fn needs_positive_cycles(self) -> bool {
        !matches!(self, Algorithm::Pi | Algorithm::Perturb)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Init<S> {
    Infinity,
    Zero,
    Given(CostVector<S>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions<S> {
    pub init: Init<S>,
    /// Float mode only.
    pub tol: S,
    pub max_iter: usize,
    pub perturb: PerturbOptions<S>,
    pub seed: u64,
    /// Number of blocks for the asynchronous methods; `None` is one block per node.
    pub partition: Option<usize>,
    pub start_policy: Option<Policy>,
}

impl<S: Scalar> Default for SolveOptions<S> {
    fn default() -> Self {
        SolveOptions {
            init: Init::Infinity,
            tol: S::from_ratio(1, 1_000_000_000),
            max_iter: 100_000,
            perturb: PerturbOptions::default(),
            seed: 0,
            partition: None,
            start_policy: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<S> {
    pub algorithm: Algorithm,
    pub cost: CostVector<S>,
    pub policy: Policy,
    pub iterations: usize,
    pub elapsed: Duration,
    /// `J = T_μ J`.
    pub bellman: bool,
    /// `J = T J`.
    pub fixed_point: bool,
    /// Every greedy policy at `J` is proper.
    pub greedy_proper: bool,
}

impl<S: Scalar> SolveReport<S> {
    /// Cost lines, with the report and policy as `#` comments so the output
    /// can be fed back through `--init file:PATH`.
    pub fn render(&self, g: &RspGraph<S>) -> String {
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        let mut out = String::new();
        writeln!(out, "# algorithm {}", self.algorithm.name()).unwrap();
        writeln!(out, "# iterations {}", self.iterations).unwrap();
        writeln!(out, "# time_us {}", self.elapsed.as_micros()).unwrap();
        writeln!(out, "# check bellman {}", ok(self.bellman)).unwrap();
        writeln!(out, "# check fixed_point {}", ok(self.fixed_point)).unwrap();
        writeln!(out, "# check greedy_proper {}", ok(self.greedy_proper)).unwrap();
        out.push_str(&write_costs(&self.cost));
        for line in write_policy(g, &self.policy).lines() {
            writeln!(out, "# policy {line}").unwrap();
        }
        out
    }
}

/// Runs one algorithm and checks its answer.
pub fn solve<S: Scalar>(g: &RspGraph<S>, algo: Algorithm, opts: &SolveOptions<S>) -> Result<SolveReport<S>> {
    g.ensure_valid()?;
    let n = g.n_nodes();
    let (forcible, reached) = proper_policy_exists(g);
    if !forcible {
        return Err(RspError::NoProperPolicy {
            n_nodes: n,
            reachable: reached.iter().filter_map(|v| v.state()).collect(),
        }
        .into());
    }
    let start = Instant::now();
    let (cost, policy, iterations) = match algo {
        Algorithm::Vi => match &opts.init {
            Init::Infinity => {
                let (j, mu, trace) = vi_from_infinity(g)?;
                (j, mu, trace.iterations)
            }
            init => {
                let j0 = finite_start(n, init)?;
                let (j, trace) = vi(g, &j0, opts.tol, opts.max_iter)?;
                if !trace.converged {
                    return Err(RspError::NotSettled { sweeps: trace.iterations }.into());
                }
                let mu = choose_policy(g, &j);
                (j, mu, trace.iterations)
            }
        },
        Algorithm::ViAsync => {
            let j0 = match &opts.init {
                Init::Infinity => CostVector::infinite(n),
                init => finite_start(n, init)?,
            };
            let sched = async_schedule(n, opts);
            let (j, trace) = vi_async(g, &j0, &sched, opts.max_iter)?;
            if !trace.converged {
                return Err(RspError::NotSettled { sweeps: trace.iterations }.into());
            }
            let mu = choose_policy(g, &j);
            (j, mu, trace.iterations)
        }
        Algorithm::Pi => {
            let mu0 = match &opts.start_policy {
                Some(mu) => mu.clone(),
                None => some_proper_policy(g).expect("a proper policy exists"),
            };
            let (j, mu, trace) = pi_proper(g, &mu0)?;
            (j, mu, trace.iterations)
        }
        Algorithm::PiAsync => {
            let mut init = AsyncPiState::initial(g);
            if let Init::Given(_) | Init::Zero = opts.init {
                let j0 = finite_start(n, &opts.init)?;
                init.j = j0.clone();
                init.v = j0;
            }
            if let Some(mu) = &opts.start_policy {
                init.mu = mu.clone();
            }
            init.partition = partition(n, opts);
            let sched = Schedule::random_fair(&init.partition, 4 * init.partition.len(), opts.seed);
            let out = pi_async(g, init, &sched, opts.max_iter)?;
            if !out.converged {
                return Err(RspError::NotSettled { sweeps: out.events }.into());
            }
            (out.state.j, out.state.mu, out.events)
        }
        Algorithm::Dijkstra => {
            let r = dijkstra_run(g)?;
            (r.cost, r.policy, r.iterations.len())
        }
        Algorithm::Perturb => {
            let (j, mu, trace) = solve_by_perturbation(g, &opts.perturb)?;
            (j, mu, trace.deltas.len())
        }
    };
    let elapsed = start.elapsed();
    let report = SolveReport {
        algorithm: algo,
        bellman: verify_bellman(g, &policy, &cost),
        fixed_point: apply_t(g, &cost).approx_eq(&cost),
        greedy_proper: cost.all_finite() && all_greedy_proper(g, &cost),
        cost,
        policy,
        iterations,
        elapsed,
    };
    if !report.bellman || !report.fixed_point {
        return Err(CliError::Assumption(format!(
            "{} returned a cost that is not a fixed point of its policy and of T",
            algo.name()
        )));
    }
    if algo.needs_positive_cycles() && !report.greedy_proper {
        return Err(CliError::Assumption(format!(
            "an improper policy attains the minimum at the computed cost, so some improper policy has a \
             zero-length cycle and the result may differ from the optimal cost; try --algo perturb or pi\n{}",
            write_costs(&report.cost)
        )));
    }
    Ok(report)
}

fn finite_start<S: Scalar>(n: usize, init: &Init<S>) -> Result<CostVector<S>> {
    match init {
        Init::Zero => Ok(CostVector::zeros(n)),
        Init::Given(j) if j.len() == n && j.all_finite() => Ok(j.clone()),
        Init::Given(_) => Err(CliError::Usage("initial costs must be finite with one value per node".into())),
        Init::Infinity => Err(CliError::Usage("this method needs a finite start".into())),
    }
}

fn partition<S>(n: usize, opts: &SolveOptions<S>) -> Vec<Vec<usize>> {
    match opts.partition {
        Some(blocks) => random_partition(n, blocks.clamp(1, n), opts.seed),
        None => singleton_partition(n),
    }
}

/// A random fair order of the blocks, every event an update.
fn async_schedule<S>(n: usize, opts: &SolveOptions<S>) -> Schedule {
    let blocks = partition(n, opts);
    let mixed = Schedule::random_fair(&blocks, 4 * blocks.len(), opts.seed);
    Schedule::new(mixed.events().iter().map(|e| Event::improve(e.nodes.clone())).collect())
}

/// A proper greedy policy when there is one, else the plain greedy policy.
fn choose_policy<S: Scalar>(g: &RspGraph<S>, j: &CostVector<S>) -> Policy {
    let mu = greedy_policy(g, j);
    if is_proper(g, &mu) {
        mu
    } else {
        proper_greedy_policy(g, j).unwrap_or(mu)
    }
}
