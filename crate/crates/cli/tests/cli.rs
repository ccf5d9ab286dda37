use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use wreathchar::wreath_chars::{character_table, CharTable, DEFAULT_CELL_BUDGET};
use wreathchar::{CharacterEngine, GroupData};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreathchar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn entry_values() {
    let out = stdout(&[
        "entry",
        "--group",
        "Z2",
        "--lambda",
        "[[1],[1]]",
        "--mu",
        "[[1,1],[]]",
    ]);
    assert!(out.starts_with("chi=2\n"), "{out}");
    let out = stdout(&[
        "entry",
        "--group",
        "trivial",
        "--lambda",
        "[[2,1]]",
        "--mu",
        "[[1,1,1]]",
    ]);
    assert!(out.starts_with("chi=2\n"));
    for mu in ["[[3],[]]", "[[1],[2]]", "[[],[1,1,1]]"] {
        let out = stdout(&["entry", "--group", "Z2", "--lambda", "[[3],[]]", "--mu", mu]);
        assert!(out.starts_with("chi=1\n"), "{mu}: {out}");
    }
    let v = json(&[
        "entry",
        "--group",
        "Z2",
        "--lambda",
        "[[1],[1]]",
        "--mu",
        "[[1,1],[]]",
        "--format",
        "json",
    ]);
    assert_eq!(v["chi"], "2");
    assert_eq!(v["config"]["lambda"], "[[1],[1]]");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(
        code(&[
            "entry",
            "--group",
            "Z2",
            "--lambda",
            "[[1],[1]",
            "--mu",
            "[[1,1],[]]"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "entry",
            "--group",
            "Z2",
            "--lambda",
            "[[1],[1]]",
            "--mu",
            "[[1],[]]"
        ]),
        2
    );
    assert_eq!(
        code(&["entry", "--group", "Z9", "--lambda", "[[1]]", "--mu", "[[1]]"]),
        2
    );
    assert_eq!(
        code(&["census", "--group", "Z2", "--n", "3", "--p", "4"]),
        2
    );
    assert_eq!(code(&["census", "--group", "Z2", "--n", "3"]), 2);
    assert_eq!(code(&["table", "--group", "Z2", "--n", "20"]), 3);
    assert_eq!(
        code(&["census", "--group", "Z2", "--n", "4", "--p", "2", "--budget", "10"]),
        3
    );
    assert_eq!(code(&["--workers", "0", "asym", "--k", "1", "--n", "5"]), 2);
}

#[test]
fn perturbed_group_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = GroupData::builtin("S3").unwrap().store();
    let good = dir.path().join("s3.json");
    std::fs::write(&good, doc.to_string()).unwrap();
    let v = json(&["group-validate", "--group-file", good.to_str().unwrap()]);
    assert_eq!(v["valid"], true);

    doc["table"][2][2] = Value::from(1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = run(&["group-validate", "--group-file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["violations"][0]
        .as_str()
        .unwrap()
        .contains("orthogonality"));
    let out = run(&[
        "census",
        "--group-file",
        bad.to_str().unwrap(),
        "--n",
        "2",
        "--p",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn mashing_commands() {
    for mu in [
        "[[6,1],[4,1,1,1]]",
        "[[2,2,2,1],[4,1,1,1]]",
        "[[2,2,2,1],[4,3]]",
    ] {
        assert_eq!(stdout(&["mash", "--mu", mu, "--p", "3"]), "[[6,1],[4,3]]\n");
    }
    assert_eq!(
        stdout(&["mash", "--mu", "[[6,1],[4,3]]", "--p", "3"]),
        "[[6,1],[4,3]]\n"
    );
    let eq = |a: &str, b: &str| stdout(&["equiv", "--mu", a, "--nu", b, "--p", "2"]);
    assert_eq!(eq("[[2,2],[]]", "[[4],[]]"), "true\n");
    assert_eq!(eq("[[2,2],[]]", "[[1,1,1,1],[]]"), "true\n");
    assert_eq!(eq("[[2,2],[]]", "[[3,1],[]]"), "false\n");
}

#[test]
fn census_matches_table() {
    let v = json(&["census", "--group", "Z2", "--n", "2", "--p", "2"]);
    let engine = CharacterEngine::new(GroupData::builtin("Z2").unwrap());
    let t = character_table(&engine, 2, DEFAULT_CELL_BUDGET).unwrap();
    let even = t
        .values
        .iter()
        .flatten()
        .filter(|x| (*x % 2u32) == 0u32.into())
        .count();
    assert_eq!(v["report"]["divisible_count"], even);
    assert_eq!(v["report"]["cells_evaluated"], 25);
    let (num, den) = v["report"]["proportion"]
        .as_str()
        .unwrap()
        .split_once('/')
        .unwrap();
    assert_eq!(25 % den.parse::<u64>().unwrap(), 0);
    assert_eq!(
        num.parse::<usize>().unwrap() * 25 / den.parse::<usize>().unwrap(),
        even
    );
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

fn table_round_trip(dir: &Path, group: &str, n: usize) {
    let engine = CharacterEngine::new(GroupData::builtin(group).unwrap());
    let expected = character_table(&engine, n, DEFAULT_CELL_BUDGET).unwrap();
    let json_path = dir.join(format!("{group}-{n}.json"));
    let csv_path = dir.join(format!("{group}-{n}.csv"));
    let ns = n.to_string();
    stdout(&[
        "table",
        "--group",
        group,
        "--n",
        &ns,
        "--out",
        json_path.to_str().unwrap(),
    ]);
    stdout(&[
        "table",
        "--group",
        group,
        "--n",
        &ns,
        "--format",
        "csv",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    let back = CharTable::from_json(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(back, expected);
    let cells = CharTable::parse_csv(&std::fs::read_to_string(&csv_path).unwrap()).unwrap();
    assert_eq!(cells.len(), expected.values.len().pow(2));
    for (lambda, mu, value) in cells {
        let r = expected
            .row_labels
            .iter()
            .position(|l| *l == lambda)
            .unwrap();
        let c = expected.column_of(&mu).unwrap();
        assert_eq!(expected.values[r][c], value);
    }
}

#[test]
fn table_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    table_round_trip(dir.path(), "Z2", 0);
    table_round_trip(dir.path(), "Z2", 3);
    table_round_trip(dir.path(), "S3", 2);
}

#[test]
fn sampled_reports_echo_seed_and_repeat() {
    let args = [
        "sample-census",
        "--group",
        "Z2",
        "--n",
        "20",
        "--p",
        "2",
        "--samples",
        "1000",
        "--seed",
        "5",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["config"]["seed"], 5);
    assert_eq!(v["report"]["seed"], 5);
    let lo = v["report"]["ci_low"].as_f64().unwrap();
    let hi = v["report"]["ci_high"].as_f64().unwrap();
    let p = v["report"]["proportion_decimal"].as_f64().unwrap();
    assert!(lo <= p && p <= hi);

    let v = json(&[
        "cert-census",
        "--k",
        "2",
        "--n",
        "30",
        "--p",
        "2",
        "--samples",
        "50",
    ]);
    assert!(v["config"]["seed"].is_u64());
}

#[test]
fn counting_commands() {
    let v = json(&["asym", "--k", "1", "--n", "10000"]);
    let r = v["result"]["ratio"].as_f64().unwrap();
    assert!((0.90..=0.995).contains(&r), "{r}");
    let v = json(&["concentration", "--k", "2", "--n", "2", "--delta", "0.5"]);
    assert_eq!(v["result"]["proportion"], "1/5");
    let v = json(&["concentration", "--k", "2", "--n", "2", "--delta", "1/2"]);
    assert_eq!(v["config"]["delta"], "1/2");
    let csv = stdout(&["dn-census", "--n", "4", "--p", "2", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# wreathchar "));
    assert_eq!(
        lines[1],
        "mode,group,n,p,samples,divisible,evaluated,proportion,ci_low,ci_high,seed,coverage"
    );
    assert_eq!(lines[2].split(',').count(), 12);
}

#[test]
fn cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_wreathchar"))
        .args([
            "cert-census",
            "--k",
            "2",
            "--n",
            "120",
            "--p",
            "2",
            "--samples",
            "20",
            "--seed",
            "1",
        ])
        .env("WREATHCHAR_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let again = Command::new(env!("CARGO_BIN_EXE_wreathchar"))
        .args([
            "cert-census",
            "--k",
            "2",
            "--n",
            "120",
            "--p",
            "2",
            "--samples",
            "20",
            "--seed",
            "1",
        ])
        .env("WREATHCHAR_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "entry",
        "table",
        "mash",
        "equiv",
        "census",
        "sample-census",
        "cert-census",
        "asym",
        "concentration",
        "dn-census",
        "group-validate",
    ] {
        let out = stdout(&[sub, "--help"]);
        assert!(out.contains("Usage: wreathchar"), "{sub}");
    }
}
