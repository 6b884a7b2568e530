//! Cross-checking benchmark over generated or stored instances.
//!
//! A spec file is TOML with one `[[suite]]` table per group of instances:
//!
//! ```toml
//! [[suite]]
//! name = "small"
//! kind = "random"        # random | search | file
//! count = 50
//! nodes = 4
//! seed = 0
//! assumption = "A1.1"    # random only
//! lengths = [-3, 9]      # random only
//!
//! [[suite]]
//! name = "fixtures"
//! kind = "file"
//! paths = ["loop.rsp"]   # relative to this file
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rsp_core::graph::{check_assumption, Assumption};
use rsp_core::instances::{gen_random, gen_search, GenSpec, SearchSpec};
use rsp_core::oracle::brute_force_capped;
use rsp_core::{CostVector, Exact, RspGraph};
use serde::Deserialize;

use crate::error::{read_file, CliError, Result};
use crate::format::parse_graph;
use crate::solve::{solve, Algorithm, SolveOptions};

pub const CSV_HEADER: &str = "instance,algorithm,iterations,time_us,agreement";

/// Instances with at most this many policies are also checked against the oracle.
const ORACLE_CAP: u128 = 10_000;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchSpec {
    #[serde(default)]
    pub suite: Vec<Suite>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Random,
    Search,
    File,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub name: String,
    pub kind: Kind,
    #[serde(default = "one")]
    pub count: usize,
    #[serde(default = "four")]
    pub nodes: usize,
    #[serde(default)]
    pub seed: u64,
    pub assumption: Option<String>,
    pub lengths: Option<(i64, i64)>,
    #[serde(default)]
    pub zero_cycle: bool,
    #[serde(default)]
    pub paths: Vec<PathBuf>,
}

fn one() -> usize {
    1
}

fn four() -> usize {
    4
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub instance: String,
    pub algorithm: &'static str,
    pub iterations: usize,
    pub time_us: u128,
    pub agreement: bool,
    /// Solver error, when the run failed.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchOutcome {
    pub rows: Vec<Row>,
    /// Instances for which no algorithm applies.
    pub skipped: Vec<String>,
}

impl BenchOutcome {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agreement)
    }

    pub fn csv(&self) -> String {
        let mut out = format!("{CSV_HEADER}\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.instance, r.algorithm, r.iterations, r.time_us, r.agreement).unwrap();
        }
        out
    }

    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.instance.len()).max().unwrap_or(8).max(8);
        let mut out =
            format!("{:width$}  {:9}  {:>10}  {:>10}  agree\n", "instance", "algorithm", "iterations", "time_us");
        for r in &self.rows {
            write!(
                out,
                "{:width$}  {:9}  {:>10}  {:>10}  {}",
                r.instance, r.algorithm, r.iterations, r.time_us, r.agreement
            )
            .unwrap();
            if let Some(note) = &r.note {
                write!(out, "  ({note})").unwrap();
            }
            out.push('\n');
        }
        for name in &self.skipped {
            writeln!(out, "{name}: skipped, neither A1.1 nor A4.3 holds").unwrap();
        }
        out
    }
}

pub fn parse_spec(text: &str) -> Result<BenchSpec> {
    toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(1, |s| text[..s.start].lines().count().max(1));
        CliError::parse(line, e.message().to_string())
    })
}

/// Methods that apply under the assumptions `g` satisfies.
///
/// Positive cycles only: every method except label setting, which also needs
/// nonnegative lengths. Nonnegative cycles only: `pi` and `perturb`, which
/// target the best proper cost.
pub fn applicable(g: &RspGraph<Exact>) -> Result<Vec<Algorithm>> {
    let holds = |a| check_assumption(g, a).map(|r| r.holds);
    if holds(Assumption::A11)? {
        let mut algos = vec![Algorithm::Vi, Algorithm::ViAsync, Algorithm::Pi, Algorithm::PiAsync, Algorithm::Perturb];
        if holds(Assumption::A51)? {
            algos.push(Algorithm::Dijkstra);
        }
        Ok(algos)
    } else if holds(Assumption::A43)? {
        Ok(vec![Algorithm::Pi, Algorithm::Perturb])
    } else {
        Ok(Vec::new())
    }
}

pub fn load_instances(spec: &BenchSpec, base_dir: &Path) -> Result<Vec<(String, RspGraph<Exact>)>> {
    let mut out = Vec::new();
    for s in &spec.suite {
        match s.kind {
            Kind::Random => {
                let target = match &s.assumption {
                    Some(a) => Some(a.parse::<Assumption>().map_err(CliError::Usage)?),
                    None => Some(Assumption::A11),
                };
                for i in 0..s.count {
                    let mut g = GenSpec::new(s.seed + i as u64, s.nodes);
                    g.target = target;
                    g.require_zero_cycle = s.zero_cycle;
                    if let Some(r) = s.lengths {
                        g.length_range = r;
                    }
                    out.push((format!("{}-{i}", s.name), gen_random(&g)?));
                }
            }
            Kind::Search => {
                for i in 0..s.count {
                    let spec = SearchSpec::new(s.seed + i as u64, s.nodes);
                    out.push((format!("{}-{i}", s.name), gen_search(&spec)?));
                }
            }
            Kind::File => {
                for p in &s.paths {
                    let path = base_dir.join(p);
                    let stem =
                        p.file_stem().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned());
                    out.push((format!("{}-{stem}", s.name), parse_graph(&read_file(&path)?)?));
                }
            }
        }
    }
    Ok(out)
}

/// Runs every applicable method on every instance and compares the costs,
/// against the oracle when the policy count is small and against the first
/// method otherwise.
pub fn run_bench(instances: &[(String, RspGraph<Exact>)]) -> Result<BenchOutcome> {
    let mut outcome = BenchOutcome::default();
    for (name, g) in instances {
        let algos = applicable(g)?;
        if algos.is_empty() {
            outcome.skipped.push(name.clone());
            continue;
        }
        let mut reference: Option<CostVector<Exact>> =
            if g.policy_count() <= ORACLE_CAP { brute_force_capped(g, None, ORACLE_CAP)?.j_hat } else { None };
        for algo in algos {
            let row = match solve(g, algo, &SolveOptions::default()) {
                Ok(r) => {
                    let agreement = reference.get_or_insert_with(|| r.cost.clone()).approx_eq(&r.cost);
                    Row {
                        instance: name.clone(),
                        algorithm: algo.name(),
                        iterations: r.iterations,
                        time_us: r.elapsed.as_micros(),
                        agreement,
                        note: None,
                    }
                }
                Err(e) => Row {
                    instance: name.clone(),
                    algorithm: algo.name(),
                    iterations: 0,
                    time_us: 0,
                    agreement: false,
                    note: Some(e.to_string()),
                },
            };
            outcome.rows.push(row);
        }
    }
    Ok(outcome)
}
