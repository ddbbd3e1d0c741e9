//! End-to-end tests of the `hopflab` binary: exit codes, documents and
//! report shapes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use hopflab::format::{from_hsc, to_hsc};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hopflab"));
    c.env_remove("HOPFLAB_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn example(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["example"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = run(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn golden_files_round_trip_byte_for_byte() {
    let mut count = 0;
    for entry in fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let h = from_hsc(&text).unwrap();
        assert_eq!(to_hsc(&h), text, "{}", path.display());
        let o = run(&["check", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        count += 1;
    }
    assert_eq!(count, 3);
}

#[test]
fn builders_reproduce_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("c2_gf3.hsc", vec!["cyclic-group", "2", "--p", "3"]),
        ("height_two_gf2.hsc", vec!["height-two-line", "--p", "2"]),
        ("smash_demo.hsc", vec!["smash-demo"]),
    ] {
        let path = example(dir.path(), name, &args);
        assert_eq!(fs::read(path).unwrap(), fs::read(golden_dir().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn truncated_input_is_invalid() {
    let text = fs::read_to_string(golden_dir().join("smash_demo.hsc")).unwrap();
    let o = run_stdin(&["check"], &text.as_bytes()[..text.len() / 3]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(code(&run(&["check", "/nonexistent/file.hsc"])), 2);
    assert_eq!(code(&run(&["example", "heisenberg", "--p", "4"])), 2);
    assert_eq!(code(&run(&["example", "a", "--p", "3", "--sigma", "1", "--lambda", "1"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn broken_antipode_fails_check_with_witness() {
    let text = fs::read_to_string(golden_dir().join("c2_gf3.hsc")).unwrap();
    let broken = text.replacen("[1, 1, 1]\n  ]", "[1, 1, 2]\n  ]", 1);
    assert_ne!(broken, text);
    let o = run_stdin(&["check", "--json"], broken.as_bytes());
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["report"]["overall"], false);
    let failed: Vec<&Value> = v["report"]["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_string()));
    // analyses refuse unverified input with the same exit code
    assert_eq!(code(&run_stdin(&["analyze"], broken.as_bytes())), 1);
}

#[test]
fn example_b_is_reported_not_asserted() {
    let dir = tempfile::tempdir().unwrap();
    let b = example(dir.path(), "b.hsc", &["B", "--p", "2", "--sigma", "0"]);
    let o = run(&["verify", "theorem-a", b.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["details"]["counterexample_flag"], true);
    assert_eq!(v["details"]["gamma1_local"]["is_local"], true);
    assert_eq!(v["details"]["h_local"]["is_local"], false);
    assert_eq!(code(&run(&["verify", "theorem-a", b.to_str().unwrap(), "--strict"])), 1);
}

#[test]
fn piped_heisenberg_passes_duality() {
    let h = run(&["example", "heisenberg", "--p", "3"]);
    assert_eq!(code(&h), 0);
    let o = run_stdin(&["verify", "duality", "--json"], &h.stdout);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["report"]["overall"], true);
    assert!(v["report"]["checks"].as_array().unwrap().len() >= 4);
}

#[test]
fn injected_discrepancy_exits_one() {
    let h = run(&["example", "smash-demo"]);
    let o = run_stdin(&["verify", "theorem-a", "--inject-fault"], &h.stdout);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("injected fault"));
    assert_eq!(code(&run_stdin(&["verify", "theorem-a"], &h.stdout)), 0);
}

#[test]
fn skips_respect_strict() {
    let heis = run(&["example", "heisenberg", "--p", "2"]).stdout;
    let o = run_stdin(&["series", "lower"], &heis);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("skipped:"));
    assert_eq!(code(&run_stdin(&["series", "lower", "--strict"], &heis)), 1);
    let c2 = run(&["example", "cyclic-group", "2", "--p", "3"]).stdout;
    let o = run_stdin(&["verify", "corollary-b", "--json"], &c2);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["skipped"].as_str().unwrap().contains("not connected"));
}

#[test]
fn analyze_json_lists_skips() {
    let c3 = run(&["example", "cyclic-group", "3", "--p", "2"]).stdout;
    let dual = run_stdin(&["dual"], &c3);
    assert_eq!(code(&dual), 0);
    let o = run_stdin(&["analyze", "--json"], &dual.stdout);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], "hopflab-report/1");
    assert_eq!(v["group_likes"]["complete"], false);
    let skipped = v["skipped"].as_array().unwrap();
    assert!(skipped.iter().any(|s| s["analysis"] == "pointed"));
    assert_eq!(code(&run_stdin(&["analyze", "--strict"], &dual.stdout)), 1);
    let k = run(&["example", "cyclic-group", "1", "--p", "5"]).stdout;
    let v = json(&run_stdin(&["analyze", "--json"], &k));
    assert_eq!(v["dim"], 1);
    assert_eq!(v["locality"]["is_local"], true);
}

#[test]
fn dual_twice_returns_the_tensors() {
    let dir = tempfile::tempdir().unwrap();
    let a = example(dir.path(), "a.hsc", &["a", "--p", "3", "--lambda", "1"]);
    let d = dir.path().join("d.hsc");
    let dd = dir.path().join("dd.hsc");
    assert_eq!(code(&run(&["dual", a.to_str().unwrap(), "-o", d.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["dual", d.to_str().unwrap(), "-o", dd.to_str().unwrap()])), 0);
    let original = from_hsc(&fs::read_to_string(a).unwrap()).unwrap();
    let back = from_hsc(&fs::read_to_string(dd).unwrap()).unwrap();
    assert_eq!(original, back);
    assert_eq!(original.labels(), back.labels());
}

#[test]
fn presentations_build_to_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let pres = example(dir.path(), "a.hpres", &["a", "--p", "3", "--sigma", "1", "--mu", "2", "--format", "hpres"]);
    let text = fs::read_to_string(&pres).unwrap();
    assert!(text.contains("\"sigma\": 1"));
    let built = dir.path().join("a.hsc");
    assert_eq!(code(&run(&["build", pres.to_str().unwrap(), "-o", built.to_str().unwrap()])), 0);
    let direct = example(dir.path(), "direct.hsc", &["a", "--p", "3", "--sigma", "1", "--mu", "2"]);
    assert_eq!(fs::read(built).unwrap(), fs::read(direct).unwrap());
    // presentations are accepted wherever structure constants are
    assert_eq!(code(&run(&["check", pres.to_str().unwrap()])), 0);
    // a violated parameter constraint surfaces as an axiom failure
    let bad = example(dir.path(), "bad.hpres", &["a", "--p", "2", "--sigma", "1", "--lambda", "1", "--format", "hpres"]);
    assert_eq!(code(&run(&["check", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["build", bad.to_str().unwrap()])), 1);
}

#[test]
fn coradical_and_series_summaries() {
    let path = golden_dir().join("height_two_gf2.hsc");
    let v = json(&run(&["coradical", path.to_str().unwrap(), "--json"]));
    assert_eq!(v["dims"], serde_json::json!([1, 3, 4]));
    assert_eq!(v["methods_agree"], true);
    assert_eq!(v["bases"][1].as_array().unwrap().len(), 3);
    let div = run(&["example", "divided-line", "--p", "3"]).stdout;
    let v = json(&run_stdin(&["series", "upper", "--json"], &div));
    assert_eq!(v["dims"], serde_json::json!([1, 3, 9]));
    let v = json(&run_stdin(&["series", "lower", "--json"], &div));
    assert_eq!(v["kind"], "lower");
}

#[test]
fn verify_all_aggregates_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["c2_gf3.hsc", "height_two_gf2.hsc", "smash_demo.hsc"] {
        fs::copy(golden_dir().join(name), dir.path().join(name)).unwrap();
    }
    example(dir.path(), "b.hpres", &["b", "--p", "3", "--sigma", "1", "--format", "hpres"]);
    let all = ["verify", "--all", dir.path().to_str().unwrap()];
    let first = run(&all);
    assert_eq!(code(&first), 0, "{}", stdout(&first));
    assert_eq!(stdout(&first).lines().count(), 4);
    let text = fs::read_to_string(golden_dir().join("c2_gf3.hsc")).unwrap();
    fs::write(dir.path().join("broken.hsc"), text.replacen("[1, 1, 0, 1]", "[1, 1, 1, 1]", 1)).unwrap();
    fs::write(dir.path().join("garbage.hsc"), "{").unwrap();
    let second = run(&all);
    assert_eq!(code(&second), 2);
    let out = stdout(&second);
    assert!(out.lines().any(|l| l.starts_with("FAIL broken.hsc")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("INVALID garbage.hsc")), "{out}");
    assert_eq!(stdout(&run(&all)), out);
}

#[test]
fn seeded_runs_are_reproducible() {
    let heis = run(&["example", "heisenberg", "--p", "3"]).stdout;
    let go = |seed: &str| {
        let mut child = bin()
            .args(["verify", "subalgebras", "--json", "--trials", "5"])
            .env("HOPFLAB_SEED", seed)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(&heis).unwrap();
        child.wait_with_output().unwrap()
    };
    let a = go("17");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, go("17").stdout);
    assert_eq!(json(&a)["details"]["seed"], 17);
    assert_eq!(code(&go("not-a-number")), 2);
}
