use std::fmt::Write as _;

use rsp_core::oracle::{brute_force_capped, OracleResult};
use rsp_core::{CostVector, RspGraph, Scalar};

use crate::error::Result;

pub fn run_oracle<S: Scalar>(g: &RspGraph<S>, horizon: Option<usize>, cap: u128) -> Result<OracleResult<S>> {
    g.ensure_valid()?;
    Ok(brute_force_capped(g, horizon, cap)?)
}

fn costs<S: Scalar>(j: &CostVector<S>) -> String {
    j.iter().map(|v| v.to_literal()).collect::<Vec<_>>().join(" ")
}

/// One row per policy, then `j_hat` and `j_star`.
pub fn render_oracle<S: Scalar>(g: &RspGraph<S>, r: &OracleResult<S>) -> String {
    let mut out = String::from("# policy | proper | regular | min_cycle_mean | max_cycle_mean | cost\n");
    for rec in &r.per_policy {
        let c = &rec.classification;
        let yes = |b: bool| if b { "yes" } else { "no" };
        writeln!(
            out,
            "{} | {} | {} | {} | {} | {}",
            g.policy_names(&rec.policy).join(" "),
            yes(c.is_proper),
            yes(c.regular),
            c.min_cycle_mean,
            c.max_cycle_mean,
            costs(&rec.cost)
        )
        .unwrap();
    }
    match &r.j_hat {
        Some(j) => writeln!(out, "j_hat {}", costs(j)).unwrap(),
        None => out.push_str("j_hat none\n"),
    }
    writeln!(out, "j_star {}", costs(&r.j_star_minimax)).unwrap();
    out
}
