//! Line-oriented text formats for graphs, policies and cost vectors.
//!
//! Graph files start with `rsp 1`, then `nodes N`, then any mix of
//! `control X NAME` and `arc X NAME Y G` lines. Nodes are numbered from 1,
//! `Y` may be `t`, and `G` is a decimal or `p/q` literal. Controls are kept in
//! declaration order. Everything after `#` on a line is ignored.

use std::fmt::Write as _;

use rsp_core::graph::Violation;
use rsp_core::{Cost, CostVector, Node, Policy, RspGraph, Scalar};

use crate::error::{CliError, Result};

pub const MAGIC: &str = "rsp";
pub const VERSION: &str = "1";

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split_once('#').map_or(raw, |(b, _)| b);
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn node_number(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| CliError::parse(line, format!("expected a node number, found {token:?}")))
}

/// Parses and validates a graph file.
///
/// Syntax problems are [`CliError::Parse`]; references to undeclared nodes or
/// controls and structural problems are collected into [`CliError::Invalid`].
pub fn parse_graph<S: Scalar>(text: &str) -> Result<RspGraph<S>> {
    let mut it = lines(text);
    match it.next() {
        Some((_, t)) if t == [MAGIC, VERSION] => {}
        Some((line, t)) => {
            return Err(CliError::parse(line, format!("expected `{MAGIC} {VERSION}`, found `{}`", t.join(" "))))
        }
        None => return Err(CliError::parse(1, "empty file")),
    }
    let n = match it.next() {
        Some((line, t)) if t.len() == 2 && t[0] == "nodes" => node_number(line, t[1])?,
        Some((line, _)) => return Err(CliError::parse(line, "expected `nodes N`")),
        None => return Err(CliError::parse(1, "missing `nodes N`")),
    };
    let mut g = RspGraph::new(n);
    let mut problems = Vec::new();
    for (line, t) in it {
        match t[0] {
            "control" => {
                if t.len() != 3 {
                    return Err(CliError::parse(line, "expected `control X NAME`"));
                }
                let x = node_number(line, t[1])?;
                if x == 0 || x > n {
                    problems.push(Violation::NodeOutOfRange { line, node: x });
                    continue;
                }
                g.add_control(x - 1, t[2]);
            }
            "arc" => {
                if t.len() != 5 {
                    return Err(CliError::parse(line, "expected `arc X NAME Y G`"));
                }
                let x = node_number(line, t[1])?;
                let to = if t[3] == "t" { None } else { Some(node_number(line, t[3])?) };
                let length = S::parse_literal(t[4])
                    .ok_or_else(|| CliError::parse(line, format!("bad arc length {:?}", t[4])))?;
                let mut ok = true;
                for v in [Some(x), to].into_iter().flatten() {
                    if v == 0 || v > n {
                        problems.push(Violation::NodeOutOfRange { line, node: v });
                        ok = false;
                    }
                }
                if !ok {
                    continue;
                }
                let Some(u) = g.control_index(x - 1, t[2]) else {
                    problems.push(Violation::UnknownControl { node: x - 1, name: t[2].to_string() });
                    continue;
                };
                g.add_arc(x - 1, u, to.map_or(Node::Dest, |y| Node::State(y - 1)), length);
            }
            "nodes" => return Err(CliError::parse(line, "`nodes` given twice")),
            other => return Err(CliError::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    problems.extend(g.validate());
    if problems.is_empty() {
        Ok(g)
    } else {
        Err(CliError::Invalid(problems))
    }
}

pub fn write_graph<S: Scalar>(g: &RspGraph<S>) -> String {
    let mut out = format!("{MAGIC} {VERSION}\nnodes {}\n", g.n_nodes());
    for x in 0..g.n_nodes() {
        for c in g.controls(x) {
            writeln!(out, "control {} {}", x + 1, c.name).unwrap();
            for s in &c.successors {
                writeln!(out, "arc {} {} {} {}", x + 1, c.name, s.to, s.length.to_literal()).unwrap();
            }
        }
    }
    out
}

/// Reads `X NAME` lines; every node must appear exactly once.
pub fn parse_policy<S: Scalar>(g: &RspGraph<S>, text: &str) -> Result<Policy> {
    let n = g.n_nodes();
    let mut choice: Vec<Option<usize>> = vec![None; n];
    for (line, t) in lines(text) {
        if t.len() != 2 {
            return Err(CliError::parse(line, "expected `X NAME`"));
        }
        let x = node_number(line, t[0])?;
        if x == 0 || x > n {
            return Err(CliError::Invalid(vec![Violation::NodeOutOfRange { line, node: x }]));
        }
        let u = g.control_index(x - 1, t[1]).ok_or_else(|| {
            CliError::Invalid(vec![Violation::UnknownControl { node: x - 1, name: t[1].to_string() }])
        })?;
        if choice[x - 1].replace(u).is_some() {
            return Err(CliError::parse(line, format!("node {x} listed twice")));
        }
    }
    match choice.iter().position(Option::is_none) {
        Some(x) => Err(CliError::Usage(format!("policy has no control for node {}", x + 1))),
        None => Ok(Policy::new(choice.into_iter().flatten().collect())),
    }
}

pub fn write_policy<S: Scalar>(g: &RspGraph<S>, mu: &Policy) -> String {
    g.policy_names(mu).iter().enumerate().map(|(x, name)| format!("{} {name}\n", x + 1)).collect()
}

/// Reads `X VALUE` lines with `inf`/`-inf` allowed; every node must appear once.
pub fn parse_costs<S: Scalar>(n: usize, text: &str) -> Result<CostVector<S>> {
    let mut values: Vec<Option<Cost<S>>> = vec![None; n];
    for (line, t) in lines(text) {
        if t.len() != 2 {
            return Err(CliError::parse(line, "expected `X VALUE`"));
        }
        let x = node_number(line, t[0])?;
        if x == 0 || x > n {
            return Err(CliError::Invalid(vec![Violation::NodeOutOfRange { line, node: x }]));
        }
        let v = Cost::parse_literal(t[1]).ok_or_else(|| CliError::parse(line, format!("bad cost {:?}", t[1])))?;
        if values[x - 1].replace(v).is_some() {
            return Err(CliError::parse(line, format!("node {x} listed twice")));
        }
    }
    match values.iter().position(Option::is_none) {
        Some(x) => Err(CliError::Usage(format!("cost file has no value for node {}", x + 1))),
        None => Ok(CostVector::new(values.into_iter().flatten().collect())),
    }
}

pub fn write_costs<S: Scalar>(j: &CostVector<S>) -> String {
    j.iter().enumerate().map(|(x, v)| format!("{} {}\n", x + 1, v.to_literal())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rsp_core::{fixtures, Exact};

    const TWO_NODES: &str = "\
rsp 1   # magic
nodes 2

control 1 go
arc 1 go 2 1/2
arc 1 go t 0
control 2 exit
arc 2 exit t -1.25
";

    #[test]
    fn reads_rational_and_decimal_lengths() {
        let g: RspGraph<Exact> = parse_graph(TWO_NODES).unwrap();
        assert_eq!(g.successors(0, 0)[0].length, Exact::new(1, 2));
        assert_eq!(g.successors(1, 0)[0].length, Exact::new(-5, 4));
        assert_eq!(g.successors(0, 0)[1].to, Node::Dest);
    }

    #[test]
    fn fixture_round_trips() {
        let g = fixtures::two_node_cycles::<Exact>();
        assert_eq!(parse_graph::<Exact>(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn unknown_control_is_a_validation_error() {
        let text = "rsp 1\nnodes 1\ncontrol 1 a\narc 1 b t 0\narc 1 a t 0\n";
        match parse_graph::<Exact>(text) {
            Err(e @ CliError::Invalid(_)) => assert_eq!(e.exit_code(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn out_of_range_node_is_reported_with_line() {
        let text = "rsp 1\nnodes 1\ncontrol 1 a\narc 1 a 3 0\n";
        match parse_graph::<Exact>(text) {
            Err(CliError::Invalid(v)) => assert!(v.contains(&Violation::NodeOutOfRange { line: 4, node: 3 })),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_are_parse_errors() {
        for text in
            ["", "rsp 2\nnodes 1\n", "rsp 1\ncontrol 1 a\n", "rsp 1\nnodes 1\narc 1 a t x\n", "rsp 1\nnodes 1\nedge\n"]
        {
            let e = parse_graph::<Exact>(text).unwrap_err();
            assert_eq!(e.exit_code(), 1, "{text:?}: {e}");
        }
    }

    #[test]
    fn policy_and_costs_round_trip() {
        let g = fixtures::two_node_cycles::<Exact>();
        let mu = Policy::new(vec![1, 0]);
        assert_eq!(write_policy(&g, &mu), "1 exit\n2 back\n");
        assert_eq!(parse_policy(&g, &write_policy(&g, &mu)).unwrap(), mu);
        let j = CostVector::new(vec![Cost::PosInf, Cost::Finite(Exact::new(-7, 3))]);
        assert_eq!(write_costs(&j), "1 inf\n2 -7/3\n");
        assert_eq!(parse_costs::<Exact>(2, &write_costs(&j)).unwrap(), j);
    }

    #[test]
    fn incomplete_policy_rejected() {
        let g = fixtures::two_node_cycles::<Exact>();
        assert_eq!(parse_policy(&g, "1 exit\n").unwrap_err().exit_code(), 2);
        assert_eq!(parse_policy(&g, "1 nope\n2 back\n").unwrap_err().exit_code(), 2);
    }
}
