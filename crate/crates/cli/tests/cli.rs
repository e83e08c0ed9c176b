//! End-to-end command checks: documented outputs, exit codes, byte-stable
//! reports, and file-format round trips.

use std::fs;

use serde_json::Value;
use sumloc::formats::{parse_progression, parse_set, write_convex, write_gap, write_set, Progression};

fn run_cli(args: &[&str]) -> (String, String, i32) {
    let mut argv = vec!["sumloc".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    sumloc::run(&argv)
}

fn lines(stdout: &str) -> Vec<Value> {
    stdout
        .lines()
        .map(|l| serde_json::from_str(l).expect("report lines are JSON"))
        .collect()
}

fn output_value(lines: &[Value], name: &str) -> String {
    lines
        .iter()
        .find(|v| v["output"] == name)
        .unwrap_or_else(|| panic!("missing output {name}"))["value"]
        .as_str()
        .unwrap()
        .to_string()
}

fn status(lines: &[Value]) -> String {
    lines.last().expect("reports end with a status line")["status"]
        .as_str()
        .unwrap()
        .to_string()
}

#[test]
fn doubling_reports_the_documented_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ap10.set");
    let body: String =
        (0..10).map(|i| format!("{i}\n")).collect::<Vec<_>>().concat();
    fs::write(&path, format!("latticeset 1\n{body}")).unwrap();
    let (out, err, code) = run_cli(&["doubling", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0, "stderr: {err}");
    let ls = lines(&out);
    assert_eq!(output_value(&ls, "doubling"), "19/10");
    assert_eq!(status(&ls), "ok");
}

#[test]
fn cover_finds_the_minimal_two_translate_progression() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("twoAPs.set");
    fs::write(&path, "latticeset 1\n0\n1\n2\n10\n11\n12\n").unwrap();
    let (out, _, code) =
        run_cli(&["cover", "--d", "1", "--t", "2", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let ls = lines(&out);
    assert_eq!(output_value(&ls, "size"), "6");
    assert_eq!(output_value(&ls, "optimal"), "true");
    assert_eq!(status(&ls), "ok");
}

#[test]
fn hull_lower_bound_is_tight_on_far_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("far.set");
    fs::write(&path, "intervals\n0 1\n100 101\n").unwrap();
    let (out, _, code) = run_cli(&["hull", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let ls = lines(&out);
    assert_eq!(output_value(&ls, "conv_upper"), "6");
    assert_eq!(output_value(&ls, "sumset_actual"), "6");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let (out, err, code) = run_cli(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(!err.is_empty());
}

#[test]
fn missing_input_is_a_usage_error() {
    let (out, _, code) = run_cli(&["doubling", "--in", "/nonexistent/missing.set"]);
    assert_eq!(code, 2);
    assert_eq!(status(&lines(&out)), "error");
}

#[test]
fn exhausted_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wide.gap");
    fs::write(&path, "gap 1 1\n0\n1\n1000000\n").unwrap();
    let (out, _, code) = run_cli(&["check", "--in", path.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(code, 3, "report: {out}");
    assert_eq!(status(&lines(&out)), "error");
}

#[test]
fn improper_progression_fails_the_assertion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("improper.gap");
    fs::write(&path, "gap 1 2\n0\n1\n2\n3 2\n").unwrap();
    let (out, _, code) = run_cli(&["check", "--in", path.to_str().unwrap(), "--s", "1"]);
    assert_eq!(code, 1);
    assert_eq!(status(&lines(&out)), "failed");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.set");
    fs::write(&path, "intervals\n0 1\n3/2 2\n").unwrap();
    let args = ["sumset", "--in", path.to_str().unwrap()];
    let (first, _, c1) = run_cli(&args);
    let (second, _, c2) = run_cli(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second);
}

#[test]
fn sumset_writes_canonical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.set");
    let out = dir.path().join("sum.set");
    fs::write(&a, "latticeset 1\n0\n1\n3\n").unwrap();
    let (_, _, code) = run_cli(&[
        "sumset",
        "--in",
        a.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let body = fs::read_to_string(&out).unwrap();
    assert_eq!(body, "latticeset 1\n0\n1\n2\n3\n4\n6\n");
    // The written file is already in canonical form.
    assert_eq!(write_set(&parse_set(&body).unwrap()), body);
}

#[test]
fn example_files_verify_and_reparse_identically() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("fam");
    let (_, _, code) = run_cli(&[
        "example",
        "ap_boxes",
        "--params",
        "k=1,t=2",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let set_body = fs::read_to_string(out_dir.join("ap_boxes.set")).unwrap();
    assert_eq!(write_set(&parse_set(&set_body).unwrap()), set_body);
    let pred = out_dir.join("ap_boxes.predictions.json");
    let (out, _, code) = run_cli(&["verify-example", "--in", pred.to_str().unwrap()]);
    assert_eq!(code, 0, "report: {out}");
    assert_eq!(status(&lines(&out)), "ok");
}

#[test]
fn merge_certifies_the_line_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let prog = dir.path().join("body.cvx");
    let window = dir.path().join("window.set");
    fs::write(&prog, "convexprog 1 1\n2 1\n2 -1\n1/10\n").unwrap();
    fs::write(&window, "intervals\n-3/20 3/20\n").unwrap();
    let (out, _, code) = run_cli(&[
        "merge",
        "--in",
        prog.to_str().unwrap(),
        "--with",
        window.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "report: {out}");
    let ls = lines(&out);
    assert_eq!(output_value(&ls, "m"), "4");
    assert_eq!(output_value(&ls, "size_ratio"), "11/15");
    assert_eq!(output_value(&ls, "q_prime_volume"), "11/10");
}

#[test]
fn snap_restores_the_near_progression() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.set");
    let window = dir.path().join("L.set");
    fs::write(&pts, "intervals\n0 0\n1 1\n2001/1000 2001/1000\n").unwrap();
    fs::write(&window, "intervals\n-1/100 1/100\n").unwrap();
    let (out, _, code) = run_cli(&[
        "snap",
        "--in",
        pts.to_str().unwrap(),
        "--with",
        window.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "report: {out}");
    let ls = lines(&out);
    assert_eq!(output_value(&ls, "relations"), "1");
    assert_eq!(output_value(&ls, "c"), "108");
    assert_eq!(output_value(&ls, "snapped"), "0; 1; 2");
}

#[test]
fn ruzsa_covers_within_the_ratio_bound() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.set");
    let b = dir.path().join("b.set");
    fs::write(&a, "intervals\n0 2\n").unwrap();
    fs::write(&b, "intervals\n0 1\n").unwrap();
    let (out, _, code) = run_cli(&[
        "ruzsa",
        "--in",
        a.to_str().unwrap(),
        "--with",
        b.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let ls = lines(&out);
    assert_eq!(output_value(&ls, "translates"), "3");
    assert_eq!(status(&ls), "ok");
}

#[test]
fn set_formats_round_trip() {
    for text in [
        "latticeset 2\n-3 4\n0 0\n1 2\n",
        "intervals\n-1/2 1/2\n3 3\n7/2 9/2\n",
        "polycube 1/2 2\n0 0\n0 1\n2 2\n",
    ] {
        let v = parse_set(text).unwrap();
        assert_eq!(write_set(&v), text);
        assert_eq!(parse_set(&write_set(&v)).unwrap(), v);
    }
}

#[test]
fn progression_formats_round_trip() {
    let gap_text = "gap 1 2\n0\n1\n2\n3 2\n";
    let Progression::Gap(g) = parse_progression(gap_text).unwrap() else {
        panic!("expected a gap progression");
    };
    assert_eq!(write_gap(&g), gap_text);

    let convex_text = "convexprog 1 1\n2 1\n2 -1\n1/10\n";
    let Progression::Convex(c) = parse_progression(convex_text).unwrap() else {
        panic!("expected a convex progression");
    };
    assert!(c.symmetric);
    assert_eq!(write_convex(&c), convex_text);
}
