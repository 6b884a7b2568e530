use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rsp_core::graph::{check_assumption, Assumption};
use rsp_core::instances::{gen_pursuit, gen_random, gen_search, Cell, GenSpec, PursuitSpec, SearchSpec};
use rsp_core::oracle::DEFAULT_POLICY_CAP;
use rsp_core::{Exact, RspError, RspGraph, Scalar};

use crate::bench::{load_instances, parse_spec, run_bench};
use crate::error::{read_file, CliError, Result};
use crate::format::{parse_costs, parse_graph, parse_policy, write_graph, write_policy};
use crate::oracle::{render_oracle, run_oracle};
use crate::solve::{solve, Algorithm, Init, SolveOptions};

#[derive(Debug, Parser)]
#[command(name = "rsp", version, about = "Robust shortest path solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a graph file and report which assumptions hold.
    Validate {
        file: PathBuf,
        #[arg(long)]
        float: bool,
    },
    /// Solve a graph file and print the costs.
    Solve(SolveArgs),
    /// Evaluate every policy.
    Oracle {
        file: PathBuf,
        /// Use the windowed limsup estimate with this horizon for improper policies.
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_POLICY_CAP)]
        cap: u128,
        #[arg(long)]
        float: bool,
    },
    /// Run every applicable method on a suite of instances and compare.
    Bench {
        spec: PathBuf,
        /// Also write the comma-separated table here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print a generated instance as a graph file.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    /// `inf`, `zero` or `file:PATH`.
    #[arg(long, default_value = "inf")]
    pub init: String,
    /// Convergence tolerance, float mode only.
    #[arg(long)]
    pub tol: Option<String>,
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long)]
    pub shrink: Option<String>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of blocks for the asynchronous methods.
    #[arg(long)]
    pub partition: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    /// Starting policy file for `pi` and `pi-async`.
    #[arg(long)]
    pub start: Option<PathBuf>,
    #[arg(long)]
    pub policy_out: Option<PathBuf>,
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reject draws failing this assumption (`A1.1`, `A4.3`, `A5.1`, ...), or `none`.
        #[arg(long, default_value = "A1.1")]
        assumption: String,
        #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
        min_length: i64,
        #[arg(long, default_value_t = 9, allow_negative_numbers = true)]
        max_length: i64,
        #[arg(long, default_value_t = 3)]
        max_controls: usize,
        #[arg(long, default_value_t = 3)]
        max_branch: usize,
        /// Require an improper policy with a zero-length cycle.
        #[arg(long)]
        zero_cycle: bool,
    },
    Search {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_continue: usize,
    },
    Pursuit {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        /// Blocked cell as `ROW,COL`, counted from 0.
        #[arg(long = "obstacle", value_parser = parse_cell)]
        obstacles: Vec<Cell>,
        /// Add a `give_up` control with this cost at every non-capture state.
        #[arg(long)]
        give_up: Option<String>,
        /// Write the chase-based base policy here.
        #[arg(long)]
        policy_out: Option<PathBuf>,
    },
}

fn parse_cell(s: &str) -> std::result::Result<Cell, String> {
    let (r, c) = s.split_once(',').ok_or("expected ROW,COL")?;
    Ok(Cell::new(r.trim().parse().map_err(|_| "bad row")?, c.trim().parse().map_err(|_| "bad column")?))
}

/// Runs one command and returns what it prints on success.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Validate { file, float } => {
            if *float {
                validate::<f64>(file)
            } else {
                validate::<Exact>(file)
            }
        }
        Command::Solve(args) => {
            if args.float {
                solve_file::<f64>(args)
            } else {
                solve_file::<Exact>(args)
            }
        }
        Command::Oracle { file, horizon, cap, float } => {
            if *float {
                let g: RspGraph<f64> = parse_graph(&read_file(file)?)?;
                Ok(render_oracle(&g, &run_oracle(&g, *horizon, *cap)?))
            } else {
                let g: RspGraph<Exact> = parse_graph(&read_file(file)?)?;
                Ok(render_oracle(&g, &run_oracle(&g, *horizon, *cap)?))
            }
        }
        Command::Bench { spec, csv } => {
            let parsed = parse_spec(&read_file(spec)?)?;
            let instances = load_instances(&parsed, spec.parent().unwrap_or(Path::new(".")))?;
            let outcome = run_bench(&instances)?;
            if let Some(path) = csv {
                write_file(path, &outcome.csv())?;
            }
            if outcome.all_agree() {
                Ok(outcome.table())
            } else {
                Err(CliError::Disagreement(format!("\n{}", outcome.table())))
            }
        }
        Command::Gen(g) => generate(g),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn scalar<S: Scalar>(flag: &str, text: &str) -> Result<S> {
    S::parse_literal(text).ok_or_else(|| CliError::Usage(format!("--{flag}: bad number {text:?}")))
}

fn validate<S: Scalar>(file: &Path) -> Result<String> {
    let g: RspGraph<S> = parse_graph(&read_file(file)?)?;
    let controls: usize = (0..g.n_nodes()).map(|x| g.controls(x).len()).sum();
    let mut out = format!(
        "ok: {} nodes, {controls} controls, {} arcs, {} policies\n",
        g.n_nodes(),
        g.arcs().count(),
        g.policy_count()
    );
    for a in Assumption::ALL {
        match check_assumption(&g, a) {
            Ok(r) if r.holds => writeln!(out, "{a} holds").unwrap(),
            Ok(r) => writeln!(out, "{a} fails: {}", r.reason).unwrap(),
            Err(RspError::PolicyCapExceeded { .. }) => writeln!(out, "{a} not checked: too many policies").unwrap(),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn solve_file<S: Scalar>(args: &SolveArgs) -> Result<String> {
    let g: RspGraph<S> = parse_graph(&read_file(&args.file)?)?;
    let mut opts = SolveOptions::<S> {
        init: match args.init.as_str() {
            "inf" => Init::Infinity,
            "zero" => Init::Zero,
            other => match other.strip_prefix("file:") {
                Some(path) => Init::Given(parse_costs(g.n_nodes(), &read_file(Path::new(path))?)?),
                None => return Err(CliError::Usage(format!("--init: expected inf, zero or file:PATH, got {other:?}"))),
            },
        },
        seed: args.seed,
        partition: args.partition,
        max_iter: args.max_iter,
        ..SolveOptions::default()
    };
    if let Some(t) = &args.tol {
        if S::EXACT {
            return Err(CliError::Usage("--tol applies to --float only".into()));
        }
        opts.tol = scalar("tol", t)?;
    }
    if let Some(d) = &args.delta {
        opts.perturb.delta0 = scalar("delta", d)?;
    }
    if let Some(s) = &args.shrink {
        opts.perturb.shrink = scalar("shrink", s)?;
    }
    if let Some(r) = args.rounds {
        opts.perturb.max_rounds = r;
    }
    if let Some(p) = &args.start {
        opts.start_policy = Some(parse_policy(&g, &read_file(p)?)?);
    }
    let report = solve(&g, args.algo, &opts)?;
    if let Some(p) = &args.policy_out {
        write_file(p, &write_policy(&g, &report.policy))?;
    }
    Ok(report.render(&g))
}

fn generate(cmd: &GenCommand) -> Result<String> {
    match cmd {
        GenCommand::Random {
            nodes,
            seed,
            assumption,
            min_length,
            max_length,
            max_controls,
            max_branch,
            zero_cycle,
        } => {
            let target = match assumption.as_str() {
                "none" => None,
                a => Some(a.parse::<Assumption>().map_err(CliError::Usage)?),
            };
            let spec = GenSpec {
                target,
                length_range: (*min_length, *max_length),
                max_controls: *max_controls,
                max_branch: *max_branch,
                require_zero_cycle: *zero_cycle,
                ..GenSpec::new(*seed, *nodes)
            };
            Ok(write_graph(&gen_random::<Exact>(&spec)?))
        }
        GenCommand::Search { nodes, seed, max_continue } => {
            let spec = SearchSpec { max_continue: *max_continue, ..SearchSpec::new(*seed, *nodes) };
            Ok(write_graph(&gen_search::<Exact>(&spec)?))
        }
        GenCommand::Pursuit { width, height, obstacles, give_up, policy_out } => {
            let spec = PursuitSpec {
                width: *width,
                height: *height,
                obstacles: obstacles.clone(),
                give_up_cost: give_up.as_deref().map(|c| scalar::<Exact>("give-up", c)).transpose()?,
            };
            let inst = gen_pursuit(&spec)?;
            if let Some(p) = policy_out {
                write_file(p, &write_policy(&inst.graph, &inst.base))?;
            }
            let mut out = String::from("# states are (pursuer, evader) cell pairs\n");
            for x in 0..inst.graph.n_nodes() {
                let (p, e) = inst.cells_of(x);
                writeln!(out, "# {} = {p} {e}", x + 1).unwrap();
            }
            out.push_str(&write_graph(&inst.graph));
            Ok(out)
        }
    }
}
