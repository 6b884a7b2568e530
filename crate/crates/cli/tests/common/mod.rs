//! Helpers for the command-line tests. The reference costs here come from
//! enumeration and never call the solvers.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use rsp_core::{Exact, Node, RspGraph};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn rsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsp")).args(args).output().expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Non-comment lines of the output.
pub fn body(out: &Output) -> Vec<String> {
    stdout(out).lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

/// Least worst-case cost over policies that always terminate, by trying
/// every policy and following its arcs recursively.
pub fn best_proper_cost(g: &RspGraph<Exact>) -> Option<Vec<Exact>> {
    let n = g.n_nodes();
    let mut best: Option<Vec<Exact>> = None;
    let mut choice = vec![0usize; n];
    loop {
        let mut memo = vec![None; n];
        let costs: Option<Vec<Exact>> =
            (0..n).map(|x| longest(g, &choice, x, &mut memo, &mut vec![false; n])).collect();
        if let Some(c) = costs {
            best = Some(match best {
                None => c,
                Some(b) => b.iter().zip(&c).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        let mut i = 0;
        while i < n {
            choice[i] += 1;
            if choice[i] < g.controls(i).len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}

fn longest(
    g: &RspGraph<Exact>,
    choice: &[usize],
    x: usize,
    memo: &mut Vec<Option<Exact>>,
    open: &mut Vec<bool>,
) -> Option<Exact> {
    if let Some(v) = memo[x] {
        return Some(v);
    }
    if open[x] {
        return None;
    }
    open[x] = true;
    let mut best: Option<Exact> = None;
    for s in g.successors(x, choice[x]) {
        let tail = match s.to {
            Node::Dest => Exact::from_integer(0),
            Node::State(y) => longest(g, choice, y, memo, open)?,
        };
        let v = s.length + tail;
        best = Some(best.map_or(v, |b| b.max(v)));
    }
    open[x] = false;
    memo[x] = best;
    best
}
