use std::path::PathBuf;
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};

static FILES: AtomicUsize = AtomicUsize::new(0);

fn graph_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hatcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{}-{name}", FILES.fetch_add(1, Ordering::Relaxed)));
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str], guards: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hatcheck"));
    cmd.args(args).env_remove("HATCHECK_GUARDS");
    if let Some(g) = guards {
        cmd.env("HATCHECK_GUARDS", g);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn value<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

const BOWTIE: &str = "5 6\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n";

#[test]
fn analyze_bowtie() {
    let f = graph_file("bowtie.txt", BOWTIE);
    let (code, out) = run(&["analyze", f.to_str().unwrap()], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "cut-vertices"), Some("[2]"));
    assert_eq!(value(&out, "circumference"), Some("3"));
}

#[test]
fn solve_reports_winner_and_sweep() {
    let f = graph_file("k3.txt", "3 3\n0 1\n0 2\n1 2\n");
    let (code, out) = run(&["solve", f.to_str().unwrap(), "--sweep"], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "hg"), Some("3"));
    let k1 = graph_file("k1.txt", "1 0\n");
    let (code, out) = run(&["solve", k1.to_str().unwrap(), "--guesses", "2", "--budget", "3"], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "winner"), Some("adversary"));
}

#[test]
fn verify_blocks_on_bowtie() {
    let f = graph_file("bowtie.txt", BOWTIE);
    let (code, out) = run(&["verify", f.to_str().unwrap(), "--lemma", "blocks", "--trials", "1000"], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "defeated"), Some("1000/1000"));
}

#[test]
fn verify_closure_on_path_tree() {
    let f = graph_file("path2.txt", "2 1\n0 1\n");
    let (code, out) = run(&["verify", f.to_str().unwrap(), "--lemma", "closure", "--trials", "exhaustive"], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "budget"), Some("3 7"));
    assert_eq!(value(&out, "defeated"), Some("10000/10000"));
    let f = graph_file("k1.txt", "1 0\n");
    let (code, out) = run(&["verify", f.to_str().unwrap(), "--lemma", "closure", "--trials", "exhaustive"], None);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "mode"), Some("exhaustive"));
}

#[test]
fn false_premise_gives_witness() {
    let f = graph_file("k2.txt", "2 1\n0 1\n");
    let (code, out) = run(&["verify", f.to_str().unwrap(), "--lemma", "rus", "--ell", "1", "--trials", "exhaustive"], None);
    assert_eq!(code, 5, "{out}");
    assert_eq!(value(&out, "witness-check"), Some("players win on every assignment"));
}

#[test]
fn exit_codes() {
    let bad = graph_file("bad.txt", "3 2\n0 1\n");
    assert_eq!(run(&["analyze", bad.to_str().unwrap()], None).0, 2);
    let f = graph_file("bowtie.txt", BOWTIE);
    assert_eq!(run(&["analyze", f.to_str().unwrap()], Some("bogus")).0, 2);
    let (code, out) = run(&["verify", f.to_str().unwrap(), "--lemma", "circ", "--trials", "10"], None);
    assert_eq!(code, 3, "{out}");
    let (code, out) = run(&["solve", f.to_str().unwrap(), "--budget", "4"], Some("assignments=10"));
    assert_eq!(code, 3, "{out}");
}

#[test]
fn bound_values() {
    let (code, out) = run(&["bound", "--seq", "a", "--n", "4"], None);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("1807"), "{out}");
    let (_, out) = run(&["bound", "--circ", "3"], None);
    assert_eq!(value(&out, "circ-bound"), Some("563102541311937/305175781250 ≈ 1845.1744073709"));
}

#[test]
fn dump_is_json() {
    let f = graph_file("bowtie.txt", BOWTIE);
    let (code, out) = run(&["--dump", "analyze", f.to_str().unwrap()], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).expect("json");
    assert_eq!(v["results"]["cut-vertices"], "[2]");
    assert_eq!(v["results"]["block"].as_array().map(Vec::len), Some(2));
    assert_eq!(v["exit"], 0);
}
