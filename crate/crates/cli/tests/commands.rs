mod common;

use common::{best_proper_cost, body, data, rsp, stderr, stdout};
use rsp_cli::format::{parse_costs, parse_graph, write_costs};
use rsp_core::{CostVector, Exact, RspGraph};

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

fn load(name: &str) -> RspGraph<Exact> {
    parse_graph(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = rsp(&["validate", &path("six_policies.rsp")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("ok: 2 nodes, 5 controls, 7 arcs, 6 policies\n"));

    let bad = rsp(&["validate", &path("unknown_control.rsp")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("unknown control leave at node 1"));

    let missing = rsp(&["validate", &path("no_such_file.rsp")]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn vi_on_positive_loop_matches_enumeration() {
    let expected = best_proper_cost(&load("exit_or_positive_loop.rsp")).unwrap();
    let out = rsp(&["solve", &path("exit_or_positive_loop.rsp"), "--algo", "vi"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(body(&out), write_costs(&CostVector::from_scalars(expected)).lines().collect::<Vec<_>>());
    assert_eq!(body(&out), ["1 1"]);
    assert!(stdout(&out).contains("# policy 1 exit\n"));
}

#[test]
fn every_algorithm_agrees_on_positive_loop() {
    for algo in ["vi", "vi-async", "pi", "pi-async", "dijkstra", "perturb"] {
        let out = rsp(&["solve", &path("exit_or_positive_loop.rsp"), "--algo", algo]);
        assert_eq!(out.status.code(), Some(0), "{algo}: {}", stderr(&out));
        assert_eq!(body(&out), ["1 1"], "{algo}");
        assert!(stdout(&out).contains("# check bellman ok\n# check fixed_point ok\n"));
    }
}

#[test]
fn perturbation_on_zero_loop_gives_one() {
    let out = rsp(&["solve", &path("stay_or_move.rsp"), "--algo", "perturb"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(body(&out), ["1 1"]);
    assert!(stdout(&out).contains("# policy 1 move\n"));
}

#[test]
fn value_iteration_on_zero_loop_is_exit_4() {
    let out = rsp(&["solve", &path("stay_or_move.rsp"), "--algo", "vi"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("zero-length cycle"), "{}", stderr(&out));
}

#[test]
fn no_proper_policy_is_exit_3() {
    let out = rsp(&["solve", &path("forced_positive_loop.rsp"), "--algo", "pi"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn init_file_and_policy_out() {
    let dir = std::env::temp_dir().join(format!("rsp-commands-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let init = dir.join("init.txt");
    std::fs::write(&init, "1 5\n").unwrap();
    let policy = dir.join("policy.txt");
    let out = rsp(&[
        "solve",
        &path("exit_or_positive_loop.rsp"),
        "--algo",
        "vi",
        "--init",
        &format!("file:{}", init.display()),
        "--policy-out",
        policy.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(body(&out), ["1 1"]);
    assert_eq!(std::fs::read_to_string(&policy).unwrap(), "1 exit\n");
    // The whole report reads back as a cost file.
    let again: CostVector<Exact> = parse_costs(1, &stdout(&out)).unwrap();
    assert_eq!(again, CostVector::from_scalars([Exact::from_integer(1)]));
}

#[test]
fn float_mode_solves() {
    let out = rsp(&["solve", &path("six_policies.rsp"), "--algo", "pi", "--float"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let expected = best_proper_cost(&load("six_policies.rsp")).unwrap();
    let got: Vec<f64> = body(&out).iter().map(|l| l.split_once(' ').unwrap().1.parse().unwrap()).collect();
    for (g, e) in got.iter().zip(&expected) {
        assert!((g - *e.numer() as f64 / *e.denom() as f64).abs() < 1e-9);
    }
}

#[test]
fn oracle_on_zero_loop() {
    let out = rsp(&["oracle", &path("exit_or_zero_loop.rsp")]);
    assert_eq!(out.status.code(), Some(0));
    let rows = body(&out);
    assert_eq!(rows.len(), 4, "{rows:?}");
    assert!(rows[0].starts_with("exit | yes"));
    assert!(rows[0].ends_with("| 1"));
    assert!(rows[1].starts_with("stay | no"));
    assert!(rows[1].ends_with("| 0"));
    assert_eq!(rows[2], "j_hat 1");
    assert_eq!(rows[3], "j_star 0");
}

#[test]
fn oracle_on_forced_positive_loop() {
    let out = rsp(&["oracle", &path("forced_positive_loop.rsp")]);
    assert_eq!(out.status.code(), Some(0));
    let rows = body(&out);
    assert_eq!(rows.len(), 3);
    assert!(rows[0].ends_with("| inf"));
    assert_eq!(rows[1], "j_hat none");
    assert_eq!(rows[2], "j_star inf");
}

#[test]
fn oracle_row_count_and_cap() {
    let out = rsp(&["oracle", &path("six_policies.rsp")]);
    assert_eq!(body(&out).len(), 6 + 2);
    let capped = rsp(&["oracle", &path("six_policies.rsp"), "--cap", "5"]);
    assert_eq!(capped.status.code(), Some(5));
}

#[test]
fn oracle_with_horizon() {
    let out = rsp(&["oracle", &path("exit_or_positive_loop.rsp"), "--horizon", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(body(&out)[1].rsplit(" | ").next(), Some("inf"));
}

#[test]
fn bench_on_fifty_random_instances() {
    let csv = std::env::temp_dir().join(format!("rsp-bench-{}.csv", std::process::id()));
    let out = rsp(&["bench", &path("a11.toml"), "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("instance,algorithm,iterations,time_us,agreement"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 50 * 5);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn bench_dispatch() {
    let csv = std::env::temp_dir().join(format!("rsp-mixed-{}.csv", std::process::id()));
    let out = rsp(&["bench", &path("mixed.toml"), "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let algos = |prefix: &str| -> Vec<String> {
        text.lines().filter(|l| l.starts_with(prefix)).map(|l| l.split(',').nth(1).unwrap().to_string()).collect()
    };
    assert!(algos("nonneg-0,").contains(&"dijkstra".to_string()));
    assert_eq!(algos("zero-stay_or_move,"), ["pi", "perturb"]);
    assert_eq!(algos("zero-exit_or_zero_loop,"), ["pi", "perturb"]);
}

#[test]
fn generated_graphs_validate() {
    let dir = std::env::temp_dir().join(format!("rsp-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases: [&[&str]; 3] = [
        &["gen", "random", "--nodes", "4", "--seed", "3", "--assumption", "A4.3", "--zero-cycle", "--min-length", "0"],
        &["gen", "search", "--nodes", "5", "--seed", "1"],
        &["gen", "pursuit", "--width", "3", "--height", "1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let out = rsp(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        let file = dir.join(format!("g{i}.rsp"));
        std::fs::write(&file, stdout(&out)).unwrap();
        assert_eq!(rsp(&["validate", file.to_str().unwrap()]).status.code(), Some(0));
    }
}

#[test]
fn open_square_pursuit_needs_give_up() {
    assert_eq!(rsp(&["gen", "pursuit", "--width", "2", "--height", "2"]).status.code(), Some(3));
    let dir = std::env::temp_dir().join(format!("rsp-pursuit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("square.rsp");
    let base = dir.join("base.txt");
    let out = rsp(&[
        "gen",
        "pursuit",
        "--width",
        "2",
        "--height",
        "2",
        "--give-up",
        "10",
        "--policy-out",
        base.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&graph, stdout(&out)).unwrap();
    let solved = rsp(&["solve", graph.to_str().unwrap(), "--algo", "pi", "--start", base.to_str().unwrap()]);
    assert_eq!(solved.status.code(), Some(0), "{}", stderr(&solved));
    let expected = best_proper_cost(&parse_graph(&stdout(&out)).unwrap()).unwrap();
    assert_eq!(body(&solved), write_costs(&CostVector::from_scalars(expected)).lines().collect::<Vec<_>>());
}
