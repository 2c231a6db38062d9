use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn domtri(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domtri"))
        .args(args)
        .current_dir(dir)
        .env_remove("DOMTRI_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const SWEEP: &str = "\
families = diamond_chain, random, eulerian
diamond_chain.k = 2
random.n = 6..9
eulerian.t = 2
seeds_per_point = 2
seed = 5
output = out/sweep
";

#[test]
fn gen_then_verify() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&domtri(d, &["gen", "eulerian", "--t", "3", "--seed", "2", "-o", "e.pgr", "--trace", "e.json"])),
        0
    );
    let out = domtri(d, &["verify", "e.pgr", "--trace", "e.json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("six-coloring violations: 0 vs 0 ok"));

    let out = domtri(d, &["verify", "e.pgr", "--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["n"], 12);
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = stdout(&domtri(dir.path(), &["gen", "random", "--n", "20", "--seed", "9"]));
    let b = stdout(&domtri(dir.path(), &["gen", "random", "--n", "20", "--seed", "9"]));
    assert_eq!(a, b);
    assert!(a.starts_with("pgr 1 20 "));
}

#[test]
fn dominate_diamond_chain() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    domtri(d, &["gen", "diamond_chain", "--k", "2", "-o", "d.pgr"]);
    let out = domtri(d, &["dominate", "d.pgr", "--method", "iota", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["size"], 4);
    assert_eq!(v["independent"], true);

    let out = domtri(d, &["dominate", "d.pgr", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["method"], "combinator");
    assert!(v["bounds"].as_array().unwrap().iter().all(|b| b["holds"] == true));

    assert_eq!(code(&domtri(d, &["dominate", "d.pgr", "--method", "gamma", "--limit-n", "10"])), 2);
}

#[test]
fn color_with_trace() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    domtri(d, &["gen", "three_tree", "--n", "9", "--seed", "1", "-o", "t.pgr", "--trace", "t.json"]);
    let out = domtri(d, &["color", "t.pgr", "--trace", "t.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 9);
    assert_eq!(code(&domtri(d, &["color", "t.pgr", "--k", "6", "--trace", "t.json"])), 2);
}

#[test]
fn sweep_is_reproducible_and_seed_overridable() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    fs::write(d.join("s.cfg"), SWEEP).unwrap();
    assert_eq!(code(&domtri(d, &["sweep", "-c", "s.cfg"])), 0);
    let first = (fs::read(d.join("out/sweep.json")).unwrap(), fs::read(d.join("out/sweep.tsv")).unwrap());
    assert_eq!(code(&domtri(d, &["sweep", "-c", "s.cfg"])), 0);
    let second = (fs::read(d.join("out/sweep.json")).unwrap(), fs::read(d.join("out/sweep.tsv")).unwrap());
    assert_eq!(first, second);

    let tsv = String::from_utf8(first.1).unwrap();
    assert!(tsv.lines().any(|l| l.starts_with("random\t6\t5\t")));

    let out = Command::new(env!("CARGO_BIN_EXE_domtri"))
        .args(["sweep", "-c", "s.cfg", "-o", "other"])
        .current_dir(d)
        .env("DOMTRI_SEED", "40")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let tsv = fs::read_to_string(d.join("other.tsv")).unwrap();
    assert!(tsv.lines().any(|l| l.starts_with("random\t6\t41\t")));
    assert!(!tsv.lines().any(|l| l.starts_with("random\t6\t5\t")));

    let audit = domtri(d, &["audit", "out/sweep.json"]);
    assert_eq!(code(&audit), 0, "{}", stdout(&audit));
}

#[test]
fn audit_flags_counterexamples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    fs::write(d.join("k.cfg"), "families = k4\noutput = k\n").unwrap();
    assert_eq!(code(&domtri(d, &["sweep", "-c", "k.cfg"])), 0);
    let mut reports: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("k.json")).unwrap()).unwrap();
    reports[0]["values"]["iota"] = 2.into();
    fs::write(d.join("bad.json"), serde_json::to_string(&reports).unwrap()).unwrap();
    let out = domtri(d, &["audit", "bad.json", "--json"]);
    assert_eq!(code(&out), 1);
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(summary["hits"].as_array().unwrap().iter().any(|h| h["verdict"] == "counterexample"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    for args in [
        &["frobnicate"][..],
        &["gen", "hexagon"],
        &["gen", "random"],
        &["verify", "missing.pgr"],
        &["sweep", "-c", "missing.cfg"],
    ] {
        assert_eq!(code(&domtri(d, args)), 2, "{args:?}");
    }
    fs::write(d.join("bad.cfg"), "families = random\n").unwrap();
    assert_eq!(code(&domtri(d, &["sweep", "-c", "bad.cfg"])), 2);
    fs::write(d.join("ok.cfg"), "families = k4\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_domtri"))
        .args(["sweep", "-c", "ok.cfg"])
        .current_dir(d)
        .env("DOMTRI_SEED", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);

    domtri(d, &["gen", "eulerian", "--t", "2", "-o", "e.pgr"]);
    domtri(d, &["gen", "eulerian", "--t", "3", "--trace", "other.json"]);
    assert_eq!(code(&domtri(d, &["verify", "e.pgr", "--trace", "other.json"])), 2);
}
