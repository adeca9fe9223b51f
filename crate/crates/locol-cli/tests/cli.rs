//! End-to-end checks of the command-line interface via the built binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn locol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("locol-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn generate_writes_parseable_graph() {
    let out = locol(&["generate", "--family", "grid", "--rows", "4", "--cols", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("p edge 16 24"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 24);
}

#[test]
fn generate_round_trips_through_color_and_verify() {
    let graph_path = temp_path("roundtrip.gr");
    let report_path = temp_path("roundtrip.json");
    let out = locol(&[
        "generate",
        "--family",
        "torus",
        "--rows",
        "5",
        "--cols",
        "5",
        "--output",
        graph_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = locol(&[
        "color",
        "--input",
        graph_path.to_str().unwrap(),
        "--algorithm",
        "main",
        "--id-scheme",
        "permuted",
        "--seed",
        "9",
        "--output",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["palette_size"], 5);
    assert_eq!(report["escalations"].as_u64().unwrap(), 0);

    let out = locol(&[
        "verify",
        "--graph",
        graph_path.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
        "--require-total",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("ok:"));

    std::fs::remove_file(&graph_path).ok();
    std::fs::remove_file(&report_path).ok();
}

#[test]
fn verify_flags_improper_coloring_with_exit_code_three() {
    let graph_path = temp_path("bad.gr");
    let report_path = temp_path("bad.json");
    std::fs::write(&graph_path, "p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
    // Both edges share vertex 2 but get the same color.
    std::fs::write(&report_path, "{\"0\": 0, \"1\": 0}").unwrap();
    let out = locol(&[
        "verify",
        "--graph",
        graph_path.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
        "--palette",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("IncidentSameColor"));
    std::fs::remove_file(&graph_path).ok();
    std::fs::remove_file(&report_path).ok();
}

#[test]
fn malformed_graph_file_reports_line_number() {
    let graph_path = temp_path("selfloop.gr");
    std::fs::write(&graph_path, "p edge 2 1\ne 1 1\n").unwrap();
    let out = locol(&["color", "--input", graph_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_file(&graph_path).ok();
}

#[test]
fn growth_profile_of_cycle() {
    let out = locol(&[
        "growth",
        "--family",
        "cycle",
        "--n",
        "9",
        "--radius-max",
        "6",
    ]);
    assert!(out.status.success());
    let profile: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sizes: Vec<u64> = profile["max_ball_size"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(sizes, vec![1, 3, 5, 7, 9, 9, 9]);
}

#[test]
fn bench_emits_verified_csv_rows_independent_of_workers() {
    let run = |workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_locol"))
            .args([
                "bench",
                "--family",
                "cycle",
                "--sizes",
                "100,1000",
                "--algorithm",
                "main",
                "--id-scheme",
                "permuted",
                "--seed",
                "2",
            ])
            .env("LOCOL_WORKERS", workers)
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        stdout(&out)
    };
    let csv = run("1");
    let lines: Vec<&str> = csv.trim_end().lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(
        lines[0],
        "family,n,delta,R,algorithm,palette_used,total_rounds_optimistic,\
total_rounds_faithful,escalations,max_chain_size,verified"
    );
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[0], "cycle");
        assert_eq!(cols[4], "main");
        assert!(cols[5].parse::<usize>().unwrap() <= 3);
        assert_eq!(*cols.last().unwrap(), "true");
    }
    // Worker count is plumbing only: identical rows.
    assert_eq!(csv, run("4"));
}

#[test]
fn bench_baseline_grid_within_palette_bound() {
    let out = locol(&[
        "bench",
        "--family",
        "grid",
        "--sizes",
        "10000",
        "--algorithm",
        "baseline",
    ]);
    assert!(out.status.success());
    let csv = stdout(&out);
    let row = csv.trim_end().lines().nth(1).expect("one data row");
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[0], "grid");
    assert_eq!(cols[4], "baseline");
    assert!(cols[5].parse::<usize>().unwrap() <= 7);
    assert_eq!(*cols.last().unwrap(), "true");
}

#[test]
fn bench_rejects_non_increasing_sizes() {
    let out = locol(&["bench", "--family", "path", "--sizes", "100,100"]);
    assert_eq!(out.status.code(), Some(1));
}
