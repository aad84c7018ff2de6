#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::*;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_markovrank"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// `(label, score, rank)` rows of a score CSV.
fn parse_scores(text: &str) -> Vec<(String, f64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("label,score,rank"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].to_string(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
            )
        })
        .collect()
}

fn scores(text: &str) -> Vec<f64> {
    parse_scores(text).into_iter().map(|r| r.1).collect()
}

fn ranks(text: &str) -> Vec<f64> {
    parse_scores(text).into_iter().map(|r| r.2).collect()
}

#[test]
fn pagerank_four_node() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "four.csv", &dense_csv(FOUR_NODE));
    let out = run(&["pagerank", p(&f), "--alpha", "0.85"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = parse_scores(&stdout(&out));
    assert_eq!(
        rows.iter().map(|r| r.0.as_str()).collect::<Vec<_>>(),
        ["1", "2", "3", "4"]
    );
    assert!(max_diff(&scores(&stdout(&out)), &FOUR_NODE_PAGERANK[0].1) < 1e-6);
    assert_eq!(ranks(&stdout(&out)), [2.5, 4.0, 2.5, 1.0]);
    // 0.85 is the default
    assert_eq!(stdout(&run(&["pagerank", p(&f)])), stdout(&out));
}

#[test]
fn multiplicity_failure_exits_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.csv", &dense_csv(SPLIT_C));
    for args in [
        vec!["pagerank", p(&f), "--alpha", "1", "--method", "exact"],
        vec!["markovrank", p(&f), "--epsilon", "0"],
        vec!["markovrank", p(&f), "--epsilon", "1e-4"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("multiplicity of the eigenvalue 1 is not one"));
        assert!(out.stdout.is_empty());
    }
    let out = run(&["markovrank", p(&f), "--epsilon", "1e-3"]);
    assert!(out.status.success());
    assert!(max_diff(&scores(&stdout(&out)), &SPLIT_C_MR_1E3) < 1e-6);
}

#[test]
fn two_node_network() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k2.csv", "0,1\n1,0\n");
    let out = run(&["pagerank", p(&f), "--alpha", "0.5"]);
    assert_eq!(scores(&stdout(&out)), [0.5, 0.5]);
    assert_eq!(ranks(&stdout(&out)), [1.5, 1.5]);
}

#[test]
fn markovrank_six_node_and_limits() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "six.csv", &dense_csv(SIX_NODE));
    let out = run(&["markovrank", p(&f), "--epsilon", "1"]);
    assert!(max_diff(&scores(&stdout(&out)), &SIX_NODE_MARKOVRANK[4].1) < 1e-6);
    assert_eq!(stdout(&run(&["markovrank", p(&f)])), stdout(&out));

    let four = write(&dir, "four.csv", &dense_csv(FOUR_NODE));
    let eps0 = run(&["markovrank", p(&four), "--epsilon", "0"]);
    let alpha1 = run(&["pagerank", p(&four), "--alpha", "1"]);
    assert!(max_diff(&scores(&stdout(&eps0)), &scores(&stdout(&alpha1))) < 1e-9);
    assert_eq!(ranks(&stdout(&eps0)), ranks(&stdout(&alpha1)));
}

#[test]
fn degenerate_scores_warn() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "b.csv", &dense_csv(SINK_B));
    let out = run(&["markovrank", p(&f), "--epsilon", "1e-15"]);
    assert!(out.status.success());
    assert!(stderr(&out).lines().any(|l| l.starts_with("WARN")));
    let out = run(&["markovrank", p(&f), "--epsilon", "1"]);
    assert!(!stderr(&out).contains("WARN"));
}

#[test]
fn power_method_and_json_output() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "four.csv", &dense_csv(FOUR_NODE));
    let out = run(&[
        "pagerank",
        p(&f),
        "--method",
        "power",
        "--tol",
        "1e-12",
        "--out",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 4);
    assert_eq!(arr[1]["label"], "2");
    assert!((arr[1]["score"].as_f64().unwrap() - 0.4292090).abs() < 1e-6);
    assert_eq!(arr[1]["rank"].as_f64().unwrap(), 4.0);
}

#[test]
fn edge_list_with_roster() {
    let dir = TempDir::new().unwrap();
    let edges = write(
        &dir,
        "edges.csv",
        "following,followed\nbob,alice\nalice,bob\ncarol,alice\n",
    );
    let roster = write(
        &dir,
        "roster.csv",
        "screen_name,extra\nalice,x\nbob,y\ncarol,z\ndave,w\n",
    );
    let out = run(&[
        "pagerank",
        p(&edges),
        "--format",
        "edgelist",
        "--roster",
        p(&roster),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = parse_scores(&stdout(&out));
    let labels: Vec<&str> = rows.iter().map(|r| r.0.as_str()).collect();
    assert_eq!(labels, ["alice", "bob", "carol", "dave"]);
    assert!((rows.iter().map(|r| r.1).sum::<f64>() - 1.0).abs() < 1e-9);

    let renamed = write(&dir, "renamed.csv", "src,dst\nbob,alice\nalice,bob\n");
    let out = run(&[
        "markovrank",
        p(&renamed),
        "--format",
        "edgelist",
        "--following-column",
        "src",
        "--followed-column",
        "dst",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(scores(&stdout(&out)), [0.5, 0.5]);
}

#[test]
fn input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.csv", "0,1\n1\n");
    let neg = write(&dir, "neg.csv", "0,-1\n1,0\n");
    let k2 = write(&dir, "k2.csv", "0,1\n1,0\n");
    for args in [
        vec!["pagerank", "/nonexistent/file.csv"],
        vec!["pagerank", p(&bad)],
        vec!["pagerank", p(&neg)],
        vec!["pagerank", p(&k2), "--alpha", "0"],
        vec!["pagerank", p(&k2), "--alpha", "1.5"],
        vec!["markovrank", p(&k2), "--epsilon", "-1"],
        vec!["pagerank", p(&k2), "--format", "edgelist"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("error:"));
    }
}

#[test]
fn compare_score_files() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.csv", &dense_csv(ALPHA_SENSITIVE_D));
    let pr = write(
        &dir,
        "pr.csv",
        &stdout(&run(&["pagerank", p(&d), "--alpha", "0.85"])),
    );
    let mr = write(
        &dir,
        "mr.csv",
        &stdout(&run(&["markovrank", p(&d), "--epsilon", "1"])),
    );
    let out = stdout(&run(&["compare", p(&pr), p(&mr)]));
    assert!(out.contains("agreement 4\n"));
    assert!(out.contains("identical false\n"));

    let out = stdout(&run(&["compare", p(&pr), p(&pr)]));
    assert_eq!(
        out,
        "agreement 6\nidentical true\na_finer_b true\nb_finer_a true\n"
    );

    let x = write(&dir, "x.csv", "label,score\na,0.3\nb,0.5\nc,0.2\n");
    // different row order, aligned by label
    let y = write(
        &dir,
        "y.csv",
        "label,score,rank\nc,0.25,1.5\nb,0.5,3\na,0.25,1.5\n",
    );
    let out = run(&["compare", p(&x), p(&y), "--out", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["a_finer_b"], true);
    assert_eq!(v["b_finer_a"], false);
    assert_eq!(v["agreement"], 1);

    let z = write(&dir, "z.csv", "label,score\na,0.3\nb,0.5\nq,0.2\n");
    assert_eq!(run(&["compare", p(&x), p(&z)]).status.code(), Some(1));
}

#[test]
fn generate_networks() {
    let dir = TempDir::new().unwrap();
    let out = stdout(&run(&["gen", "--model", "er", "--n", "3", "--p", "0"]));
    assert_eq!(out, "0,0,0\n0,0,0\n0,0,0\n");
    let out = stdout(&run(&["gen", "--model", "er", "--n", "3", "--p", "1"]));
    assert_eq!(out, "0,1,1\n1,0,1\n1,1,0\n");

    let path = dir.path().join("e2.csv");
    let out = run(&[
        "gen",
        "--model",
        "block",
        "--blocks",
        "80x80@0.1,80x20@0;20x80@0.1,20x20@0.1",
        "--seed",
        "5",
        "--out",
        p(&path),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 100);
    assert!(rows[..80].iter().all(|r| r[80..].iter().all(|&v| v == 0.0)));
    assert!(rows.iter().enumerate().all(|(i, r)| r[i] == 0.0));
    assert!(rows[80..].iter().any(|r| r[..80].contains(&1.0)));

    assert_eq!(
        run(&["gen", "--model", "er", "--n", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "gen",
            "--model",
            "block",
            "--blocks",
            "2x2@0.1,2x3@0.1;2x2@0,2x2@0"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn generated_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.csv");
    let gen = run(&[
        "gen",
        "--model",
        "er",
        "--n",
        "40",
        "--p",
        "0.2",
        "--seed",
        "9",
        "--out",
        p(&path),
    ]);
    assert!(gen.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = markovrank::graph::parse_dense_matrix(&text, None).unwrap();
    assert_eq!(parsed, markovrank::gen_er(40, 0.2, 9).unwrap());
    assert_eq!(parsed.to_dense_csv(), text);
    let out = run(&["pagerank", p(&path)]);
    assert!(out.status.success());
    assert_eq!(parse_scores(&stdout(&out)).len(), 40);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = stdout(&run(&[
        "gen", "--model", "er", "--n", "30", "--p", "0.15", "--seed", "2",
    ]));
    let b = stdout(&run(&[
        "gen", "--model", "er", "--n", "30", "--p", "0.15", "--seed", "2",
    ]));
    assert_eq!(a, b);
    let f = write(&dir, "g.csv", &a);
    for args in [
        vec!["pagerank", p(&f), "--alpha", "0.9"],
        vec!["markovrank", p(&f), "--epsilon", "0.5"],
        vec!["sweep", p(&f), "--out", "csv"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn sweep_reports() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.csv", &dense_csv(ALPHA_SENSITIVE_D));
    let out = run(&["sweep", p(&d)]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let comps = v["comparisons"].as_array().unwrap();
    let eps_vs_one: Vec<_> = comps
        .iter()
        .filter(|c| c["family"] == "markovrank" && c["baseline_family"] == "markovrank")
        .collect();
    assert_eq!(eps_vs_one.len(), 5);
    assert!(eps_vs_one
        .iter()
        .all(|c| c["identical"] == true && c["agreement"] == 6));

    let k2 = write(&dir, "k2.csv", "0,1\n1,0\n");
    let csv = stdout(&run(&[
        "sweep",
        p(&k2),
        "--alphas",
        "0.5,1",
        "--epsilons",
        "0,1",
        "--out",
        "csv",
    ]));
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let agreement = header.iter().position(|&h| h == "agreement").unwrap();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(rows
        .iter()
        .all(|r| r.split(',').nth(agreement) == Some("2")));

    let c = write(&dir, "c.csv", &dense_csv(SPLIT_C));
    let report = dir.path().join("c.json");
    let out = run(&["sweep", p(&c), "--output", p(&report)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let failed: Vec<(String, f64)> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|pt| pt["status"]["kind"] == "multiplicity_failure")
        .map(|pt| {
            (
                pt["family"].as_str().unwrap().to_string(),
                pt["parameter"].as_f64().unwrap(),
            )
        })
        .collect();
    assert!(failed.contains(&("pagerank".into(), 1.0)));
    assert!(failed.contains(&("markovrank".into(), 0.0)));
}
