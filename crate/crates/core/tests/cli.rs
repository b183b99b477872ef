use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weylgraph"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("weylgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_writes_graph_file() {
    let path = tmp("lines.wbg");
    let o = run(&[
        "build", "--geom", "thick", "--q", "2", "--n", "3", "--i", "1", "--j", "1", "--k", "0", "--mode", "exact", "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("WBG1 35 35\n"));
    // deterministic output
    let again = run(&["build", "--geom", "thick", "--q", "2", "--n", "3", "--i", "1", "--j", "1", "--k", "0"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn build_reports_bivalence() {
    let o = run(&["build", "--geom", "thin", "--n", "10", "--i", "3", "--j", "3", "--k", "1", "--mode", "exact"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("bivalence Some((63, 63))"));
}

#[test]
fn invalid_spec_exits_2() {
    let o = run(&["build", "--geom", "thick", "--q", "2", "--n", "3", "--i", "1", "--j", "1", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["build", "--geom", "thick", "--n", "3", "--i", "1", "--j", "1", "--k", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_then_reconstruct() {
    let path = tmp("planes.wbg");
    let o = run(&[
        "build", "--geom", "thick", "--q", "2", "--n", "5", "--i", "2", "--j", "2", "--k", "1", "--mode", "at-least", "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = run(&["reconstruct", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["params"]["n"], 5);
    assert_eq!(v["params"]["i"], 2);
    assert_eq!(v["params"]["j"], 2);
    assert_eq!(v["params"]["k"], 1);
    assert_eq!(v["params"]["mode"], "at-least");
    assert_eq!(v["detected_type"], "II");
}

#[test]
fn reconstruct_trivial_and_random() {
    let matching = tmp("matching.wbg");
    let mut text = String::from("WBG1 4 4\n");
    for a in 0..4 {
        text.extend((0..4).map(|b| if a == b { '1' } else { '0' }));
        text.push('\n');
    }
    std::fs::write(&matching, text).unwrap();
    let o = run(&["reconstruct", matching.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["detected_type"]["Trivial"], "Matching");

    // a fixed pseudo-random bipartite graph
    let random = tmp("random.wbg");
    let mut text = String::from("WBG1 12 12\n");
    let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..12 {
        for _ in 0..12 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            text.push(if x % 3 == 0 { '1' } else { '0' });
        }
        text.push('\n');
    }
    std::fs::write(&random, text).unwrap();
    let o = run(&["reconstruct", random.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    let bad = tmp("bad.wbg");
    std::fs::write(&bad, "WBG1 2 2\n10\n0x\n").unwrap();
    assert_eq!(run(&["reconstruct", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn aut_orders() {
    let heawood = tmp("heawood.wbg");
    run(&[
        "build", "--geom", "thick", "--q", "2", "--n", "2", "--i", "0", "--j", "1", "--k", "0", "-o",
        heawood.to_str().unwrap(),
    ]);
    let o = run(&["aut", heawood.to_str().unwrap()]);
    assert!(stdout(&o).contains("order 336"));

    let k33 = tmp("k33.wbg");
    std::fs::write(&k33, "WBG1 3 3\n111\n111\n111\n").unwrap();
    assert!(stdout(&run(&["aut", k33.to_str().unwrap()])).contains("order 72"));

    let thin = tmp("thin6221.wbg");
    run(&["build", "--geom", "thin", "--n", "6", "--i", "2", "--j", "2", "--k", "1", "-o", thin.to_str().unwrap()]);
    assert!(stdout(&run(&["aut", thin.to_str().unwrap()])).contains("order 40320"));

    assert_eq!(run(&["aut", heawood.to_str().unwrap(), "--budget", "1"]).status.code(), Some(4));
}

#[test]
fn verify_prints_check_lines() {
    let json = tmp("tables.json");
    let o = run(&["verify", "paper-tables", "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("CHECK ")).all(|l| l.ends_with(" PASS")));
    assert!(out.contains("SUITE paper-tables PASS"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v[0]["suite"], "paper-tables");

    let a = run(&["verify", "disjoint-space", "--instances", "200", "--seed", "7", "--threads", "1"]);
    let b = run(&["verify", "disjoint-space", "--instances", "200", "--seed", "7", "--threads", "2"]);
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with("SUITE")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
    assert!(a.status.success());

    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
}
