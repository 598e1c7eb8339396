//! End-to-end checks of the command-line surface: file formats, report
//! text, determinism, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qosadm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qosadm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qosadm(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("qosadm-test-{}-{name}", std::process::id()));
    path
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = temp_path(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn gen_produces_parseable_graphs() {
    let text = stdout(&["gen", "cycle", "5"]);
    assert!(text.starts_with("nodes 5\n"));
    assert_eq!(text.lines().count(), 6);

    let star = stdout(&["gen", "star", "4"]);
    assert!(star.contains("0 3"));

    assert!(!qosadm(&["gen", "cycle", "2"]).status.success());
}

#[test]
fn random_generation_is_seed_deterministic() {
    let a = stdout(&["gen", "random-graph", "6", "--p", "1/2", "--seed", "1"]);
    let b = stdout(&["gen", "random-graph", "6", "--p", "1/2", "--seed", "1"]);
    assert_eq!(a, b);

    let net = stdout(&["gen", "random-line-network", "8", "--seed", "7"]);
    assert!(net.starts_with("rT 1\n"));
    assert_eq!(net, stdout(&["gen", "random-line-network", "8", "--seed", "7"]));
}

#[test]
fn conflict_of_a_star_network_is_complete() {
    let star = write_temp("star.txt", "nodes 4\n0 1\n0 2\n0 3\n");
    let text = stdout(&["conflict", "--network", star.to_str().unwrap()]);
    assert!(text.contains("# vertex 0: link 0 1"));
    assert!(text.contains("nodes 3"));
    // All three links share the hub: the conflict graph is a triangle.
    assert!(text.contains("0 1\n0 2\n1 2\n"));
}

#[test]
fn feas_reports_oracle_and_conditions() {
    let c5 = write_temp("c5.txt", &stdout(&["gen", "cycle", "5"]));
    let demands = write_temp("d25.txt", "0 1 2/5\n0 4 2/5\n1 2 2/5\n2 3 2/5\n3 4 2/5\n");
    let text = stdout(&[
        "feas",
        "--network",
        c5.to_str().unwrap(),
        "--demands",
        demands.to_str().unwrap(),
    ]);
    assert!(text.contains("oracle duration 1\n"));
    assert!(text.contains("feasible yes"));
    assert!(text.contains("lp duration 1\n"));
    assert!(text.contains("condition shannon bound 4/5 threshold 2/3 reject"));
    assert!(text.contains("condition d1 bound 4/5 threshold 4/5 accept"));
    assert!(text.contains("imperfection ratio 5/4"));
}

#[test]
fn feas_on_a_conflict_graph_instance() {
    let claw = write_temp("claw.txt", "nodes 4\n0 1\n0 2\n0 3\n");
    let demands = write_temp("claw-d.txt", "0 0\n1 1\n2 1\n3 1\n");
    let text = stdout(&[
        "feas",
        "--conflict",
        claw.to_str().unwrap(),
        "--demands",
        demands.to_str().unwrap(),
    ]);
    assert!(text.contains("lp duration 1\n"));
    assert!(text.contains("condition row bound 3 threshold 1 reject"));
}

#[test]
fn admit_modes_agree_and_trace_is_written() {
    let c5 = write_temp("c5b.txt", &stdout(&["gen", "cycle", "5"]));
    let demands = write_temp("d12.txt", "0 1 1/2\n0 4 1/2\n1 2 1/2\n2 3 1/2\n3 4 1/2\n");
    let reference = stdout(&[
        "admit",
        "--network",
        c5.to_str().unwrap(),
        "--demands",
        demands.to_str().unwrap(),
        "--d",
        "1",
        "--mode",
        "reference",
    ]);
    let trace_path = temp_path("trace.txt");
    let simulated = stdout(&[
        "admit",
        "--network",
        c5.to_str().unwrap(),
        "--demands",
        demands.to_str().unwrap(),
        "--d",
        "1",
        "--mode",
        "simulate",
        "--trace",
        trace_path.to_str().unwrap(),
    ]);
    assert_eq!(reference, simulated);
    assert!(reference.contains("alpha 5/4"));
    assert!(reference.contains("flow 0 1 reject"));

    let trace = std::fs::read_to_string(&trace_path).unwrap();
    for line in trace.lines() {
        assert_eq!(line.split_whitespace().count(), 6);
        assert!(line.contains("infeasible"));
    }
}

#[test]
fn experiment_reports_are_deterministic_and_exit_clean() {
    let out_a = temp_path("report-a.json");
    let out_b = temp_path("report-b.json");
    for out in [&out_a, &out_b] {
        let output = qosadm(&[
            "experiment",
            "sigma-line-sweep",
            "--seed",
            "11",
            "--instances",
            "10",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success());
        let table = String::from_utf8(output.stdout).unwrap();
        assert!(table.contains("PASS sigma-line-sweep: 11/11 checks pass"));
    }
    assert_eq!(
        std::fs::read_to_string(&out_a).unwrap(),
        std::fs::read_to_string(&out_b).unwrap()
    );

    assert!(!qosadm(&["experiment", "no-such-experiment"]).status.success());
}
