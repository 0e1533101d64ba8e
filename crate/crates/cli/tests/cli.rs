// Copyright (c) The fgh Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::{Command, Output};

use fgh_core::machine::{step, TraceRecord};
use fgh_core::BaseFunction;

fn fgh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fgh")).args(args).output().expect("run fgh")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = fgh(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out).trim_end().to_string()
}

fn code(args: &[&str]) -> Option<i32> {
    fgh(args).status.code()
}

fn seq_file(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("fgh-cli-test-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn ordinal_subcommands() {
    assert_eq!(ok(&["normalize", "w + w^2"]), "w^2");
    assert_eq!(ok(&["normalize", "w^2 + w + w^2*3"]), "w^2*4");
    assert_eq!(ok(&["cmp", "w", "w+1"]), "LT");
    assert_eq!(ok(&["cmp", "1 + w", "w"]), "EQ");
    assert_eq!(ok(&["cmp", "e0", "w^(w^(w^w))"]), "GT");
    assert_eq!(ok(&["mc", "w^w*3 + w*2"]), "3");
    assert_eq!(ok(&["fs", "w^2", "3"]), "w*3");
    assert_eq!(ok(&["fs", "e0", "3"]), "w^w");
    assert_eq!(ok(&["tower", "3"]), "w^w");
}

#[test]
fn eval_outputs() {
    let out = ok(&["eval", "--alpha", "2", "--x", "2", "--f", "succ"]);
    assert!(out.starts_with("7 (steps="), "{out}");
    assert_eq!(ok(&["eval", "--alpha", "0", "--x", "9", "--f", "affine:2,1"]), "19 (steps=1)");
    let out = ok(&["eval", "--alpha", "w", "--x", "3", "--engine", "recursive"]);
    assert!(out.starts_with("61 "), "{out}");
    let out = ok(&["eval", "--alpha", "1", "--x", "1", "--f", "table:5,6;affine:1,1"]);
    // f(f(1)) = f(6), past the table
    assert!(out.starts_with("7 "), "{out}");
}

#[test]
fn exit_codes() {
    // parse errors and bad flags
    assert_eq!(code(&["normalize", "w^^2"]), Some(2));
    assert_eq!(code(&["eval", "--alpha", "w", "--x", "-1"]), Some(2));
    assert_eq!(code(&["eval", "--alpha", "w", "--x", "1", "--f", "affine:0,1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    // domain errors
    assert_eq!(code(&["normalize", "e0*2"]), Some(3));
    assert_eq!(code(&["fs", "3", "1"]), Some(3));
    assert_eq!(code(&["mc", "e0"]), Some(3));
    assert_eq!(code(&["tower", "11"]), Some(3));
    assert_eq!(code(&["eval", "--alpha", "w", "--x", "4", "--f", "affine:2,1", "--max-digits", "50"]), Some(3));
    // fuel
    assert_eq!(code(&["eval", "--alpha", "w", "--x", "10", "--fuel", "100"]), Some(4));
    assert_eq!(code(&["eval", "--alpha", "w", "--x", "10", "--fuel", "100", "--engine", "recursive"]), Some(4));
    assert_eq!(code(&["trace", "--alpha", "w", "--x", "5", "--fuel", "3"]), Some(4));
}

#[test]
fn parse_errors_point_at_the_input() {
    let out = fgh(&["normalize", "w^^2"]);
    let err = stderr(&out);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines[1], "  w^^2");
    assert_eq!(lines[2], "    ^");
    assert!(stdout(&out).is_empty());
}

#[test]
fn fuel_exhaustion_prints_no_value() {
    let out = stdout(&fgh(&["eval", "--alpha", "w", "--x", "10", "--f", "succ", "--fuel", "100"]));
    assert!(out.starts_with("FUEL_EXHAUSTED (steps=100)"), "{out}");
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn text_trace() {
    let out = ok(&["trace", "--alpha", "1", "--x", "0", "--f", "succ"]);
    let measures: Vec<&str> = out.lines().map(|l| l.rsplit("h=").next().unwrap()).collect();
    assert_eq!(measures, ["w", "1", "0"]);
    assert!(out.lines().next().unwrap().starts_with("0\t"));
}

#[test]
fn trace_line_count_is_bounded_by_fuel() {
    for fuel in [0u32, 1, 5, 40] {
        let out = fgh(&["trace", "--alpha", "w^2", "--x", "2", "--fuel", &fuel.to_string()]);
        assert!(stdout(&out).lines().count() <= fuel as usize + 1);
    }
}

#[test]
fn jsonl_replays() {
    let f = BaseFunction::Succ;
    for (alpha, x) in [("w + 1", "1"), ("w^2", "1"), ("w*2", "1"), ("3", "1")] {
        let out = ok(&["trace", "--alpha", alpha, "--x", x, "--format", "jsonl", "--fuel", "100000"]);
        let records: Vec<TraceRecord> = out.lines().map(|l| TraceRecord::from_json_line(l).unwrap()).collect();
        assert_eq!(records[0].index, 0);
        assert_eq!(records[0].measure, format!("w^{}", parenthesise(alpha)));
        for pair in records.windows(2) {
            let s = pair[0].to_state().unwrap();
            assert_eq!(step(&f, &s).unwrap(), pair[1].to_state().unwrap());
            assert_eq!(pair[1].index, pair[0].index + 1);
        }
        let last = records.last().unwrap().to_state().unwrap();
        assert!(last.is_halted());
        let value = ok(&["eval", "--alpha", alpha, "--x", x]);
        assert!(value.starts_with(&format!("{} ", last.register())));
    }
}

fn parenthesise(alpha: &str) -> String {
    if alpha.bytes().all(|b| b.is_ascii_digit()) || alpha == "w" {
        alpha.to_string()
    } else {
        format!("({alpha})")
    }
}

#[test]
fn deterministic() {
    let path = seq_file("det.seq", "alpha: 2\nw^2\nw*3 + 1\nw + 4\n2\n");
    let runs: [&[&str]; 3] = [
        &["trace", "--alpha", "w^w", "--x", "2", "--format", "jsonl", "--fuel", "300"],
        &["eval", "--alpha", "w*2", "--x", "2", "--f", "affine:2,1"],
        &["adversary", "--seq", path.to_str().unwrap()],
    ];
    for args in runs {
        let a = fgh(args);
        let b = fgh(args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn adversary_worked_sequence() {
    let path = seq_file("worked.seq", "alpha: 1\n# worked example\nw\n5\n3\n1\n0\n");
    let out = ok(&["adversary", "--seq", path.to_str().unwrap()]);
    let table: Vec<&str> = out.lines().filter(|l| l.starts_with("  f(")).collect();
    assert_eq!(table, ["  f(0) = 7", "  f(1) = 8", "  f(2) = 9", "  f(3) = 10"]);
    assert!(out.contains("i=0 a=0 Two(b=0, beta=0, n=1)"));
    assert!(out.ends_with("status: AllVerified"));
    let json_start = out.find("report: ").unwrap() + "report: ".len();
    let json_end = out.rfind("\nstatus:").unwrap();
    let report: serde_json::Value = serde_json::from_str(&out[json_start..json_end]).unwrap();
    assert_eq!(report["status"], "AllVerified");
    assert_eq!(report["checks"].as_array().unwrap().len(), 4);
    assert_eq!(ok(&["adversary", "--seq", path.to_str().unwrap(), "--extend"]), out);
}

#[test]
fn adversary_exit_codes() {
    let worked = seq_file("codes.seq", "alpha: 1\nw\n5\n3\n1\n0\n");
    let worked = worked.to_str().unwrap();
    let bad = seq_file("bad.seq", "alpha: 1\nw\n3\n5\n");
    let garbled = seq_file("garbled.seq", "alpha 1\nw\n");
    assert_eq!(code(&["adversary", "--seq", bad.to_str().unwrap()]), Some(3));
    assert!(stderr(&fgh(&["adversary", "--seq", bad.to_str().unwrap()])).contains("entry 2"));
    assert_eq!(code(&["adversary", "--seq", garbled.to_str().unwrap()]), Some(2));
    assert_eq!(code(&["adversary", "--seq", "/nonexistent/fgh.seq"]), Some(3));
    assert_eq!(code(&["adversary", "--seq", worked, "--strict"]), Some(3));
    assert_eq!(code(&["adversary", "--seq", worked, "--strict", "--extend"]), Some(2));

    let tiny = fgh(&["adversary", "--seq", worked, "--fuel", "1"]);
    assert_eq!(tiny.status.code(), Some(4));
    let out = stdout(&tiny);
    assert!(out.contains("i=0 a=0"), "partial schedule missing: {out}");
    assert!(out.ends_with("status: FuelExhausted(1)\n"));
}
