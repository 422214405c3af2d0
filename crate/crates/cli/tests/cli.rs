use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hullcode"))
}

fn run(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hullcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const HAMMING8: &str = "2 8 4\n10000111\n01001011\n00101101\n00011110\n";

#[test]
fn circulant_into_info() {
    let built = run(&["build-circulant", "D11"], b"");
    assert!(built.status.success());
    let info = run(&["info"], &built.stdout);
    assert!(info.status.success());
    let text = stdout(&info);
    assert!(text.contains("[56,28,12]"), "{text}");
    assert!(text.contains("self-dual") && text.contains("doubly even"), "{text}");
}

#[test]
fn transform_into_minweight() {
    let t = run(
        &["transform", "--seed", "a37225", "--pair", "c37226", "--check", "hull"],
        b"",
    );
    assert!(t.status.success(), "{}", String::from_utf8_lossy(&t.stderr));
    let d = run(&["minweight"], &t.stdout);
    assert_eq!(stdout(&d).trim(), "6");
    let info = run(&["info", "--format", "json"], &t.stdout);
    let v: serde_json::Value = serde_json::from_slice(&info.stdout).unwrap();
    assert_eq!(v["lcd"], true);
    assert_eq!(v["d"], 6);
}

#[test]
fn rank_deficient_input_is_a_domain_error() {
    let o = run(&["info"], b"2 4 2\n1100\n1100\n");
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"], b"").status.code(), Some(2));
    assert_eq!(run(&["search-sd", "--seed", "D11"], b"").status.code(), Some(2));
}

#[test]
fn distribution_and_invariant() {
    let o = run(&["distribution"], HAMMING8.as_bytes());
    assert_eq!(stdout(&o), "0 1\n4 14\n8 1\n");
    let o = run(&["distribution", "--format", "json"], HAMMING8.as_bytes());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"][4], 14);
    let o = run(&["invariant"], HAMMING8.as_bytes());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"], serde_json::json!([14]));
    let o = run(&["minweight", "--abort-below", "5"], HAMMING8.as_bytes());
    assert_eq!(stdout(&o).trim(), "below 5");
}

#[test]
fn shorten_and_puncture_use_one_based_coordinates() {
    let o = run(&["shorten", "--coords", "1"], HAMMING8.as_bytes());
    assert!(stdout(&o).starts_with("2 7 3\n"), "{}", stdout(&o));
    let o = run(&["puncture", "--coords", "8"], HAMMING8.as_bytes());
    let d = run(&["minweight"], &o.stdout);
    assert_eq!(stdout(&d).trim(), "3");
    assert_eq!(
        run(&["puncture", "--coords", "0"], HAMMING8.as_bytes()).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["puncture", "--coords", "9"], HAMMING8.as_bytes()).status.code(),
        Some(1)
    );
}

#[test]
fn equivalence_of_permuted_hamming() {
    let a = scratch("h8.txt", HAMMING8);
    let b = scratch("h8p.txt", "2 8 4\n01000111\n10001011\n00101101\n00011110\n");
    let o = run(&["equiv", a.to_str().unwrap(), b.to_str().unwrap()], b"");
    let text = stdout(&o);
    assert!(text.starts_with("equivalent\n"), "{text}");
}

#[test]
fn lcd_search_then_replay() {
    let pairs = scratch("pairs.txt", "x=010110011011111 y=110010110000001\n");
    let out = scratch("lcd.jsonl", "");
    let o = run(
        &[
            "search-lcd",
            "--seed",
            "a37225",
            "--pair-file",
            pairs.to_str().unwrap(),
            "--d-target",
            "6",
            "--out",
            out.to_str().unwrap(),
        ],
        b"",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = std::fs::read_to_string(&out).unwrap();
    assert_eq!(lines.lines().count(), 1);
    let rec: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(rec["d"], 6);
    assert!(rec.get("timestamp").is_none());
    let o = run(&["replay", out.to_str().unwrap()], b"");
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("ok candidate 0"));

    let tampered = scratch("bad.jsonl", &lines.replace("\"d\":6", "\"d\":7"));
    let o = run(&["replay", tampered.to_str().unwrap()], b"");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sampled_search_needs_a_seed() {
    let o = run(
        &[
            "search-sd",
            "--seed",
            "D11",
            "--y",
            "4",
            "--sample",
            "3",
            "--d-target",
            "12",
        ],
        b"",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_paper_writes_a_report() {
    let report = std::env::temp_dir().join(format!("hullcode-report-{}.json", std::process::id()));
    let o = run(
        &["verify-paper", "--only", "4,6", "--report", report.to_str().unwrap()],
        b"",
    );
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}
