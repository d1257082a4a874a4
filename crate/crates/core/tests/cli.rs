use std::process::Command;

use delaycalc::cli::run;
use delaycalc::conditions::{solve_dridc, BdcParams};
use delaycalc::syntax::{parse_signal_line, parse_signals};
use delaycalc::Signal;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("delaycalc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn signal_lines(text: &str) -> Vec<(String, Signal)> {
    let lines: String = text.lines().filter(|l| l.contains(":=")).map(|l| format!("{l}\n")).collect();
    parse_signals(&lines).unwrap()
}

#[test]
fn exit_codes() {
    let u = "[0,2) [3,4) [7,9)";
    assert_eq!(invoke(&["check", "bdc(1,2,1,2)", u, "[2,6) [9,11)"]).0, 0);
    assert_eq!(invoke(&["check", "bdc(1,2,1,2)", u, "[0,1)"]).0, 1);
    assert_eq!(invoke(&["check", "bdc(1,2,1,2)", u, "[0,1"]).0, 2);
    assert_eq!(invoke(&["check", "bdc(3,2,1,2)", u, "[0,1)"]).0, 2);
    assert_eq!(invoke(&["cc", "bdc(1,2,1,2)"]).0, 0);
    assert_eq!(invoke(&["cc", "bdc(0,3,0,1)"]).0, 1);
    assert_eq!(invoke(&["counterexample", "bogus"]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
    let (code, _, err) = invoke(&["render", "[1/2,3)", "--step", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("--step 1/2"), "{err}");
}

#[test]
fn counterexample_lines_are_checkable() {
    let (code, out, _) = invoke(&["counterexample", "ride-composition"]);
    assert_eq!(code, 0);
    let sigs = signal_lines(&out);
    let names: Vec<&str> = sigs.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["u", "x", "y"]);
    let line = |i: usize| format!("{} := {}", sigs[i].0, sigs[i].1.support());
    let (u, x, y) = (line(0), line(1), line(2));
    assert_eq!(invoke(&["check", "dride(1,2,1,2)", &u, &x]).0, 0);
    assert_eq!(invoke(&["check", "dride(2,3,2,3)", &x, &y]).0, 0);
    assert_eq!(invoke(&["check", "bde(3,5,3,5)", &u, &y]).0, 0);
    for mu in ["0", "1", "3/2", "2"] {
        let single = format!("dride({mu},5,{mu},5)");
        assert_eq!(invoke(&["check", &single, &u, &y]).0, 1, "{single}");
    }
}

#[test]
fn printed_signals_parse_back() {
    let u = "[0,2) [3,4) [7,9)";
    let (code, out, _) = invoke(&["solve", "dride(1,2,1,2)", u]);
    assert_eq!(code, 0);
    let (name, x) = parse_signal_line(out.trim()).unwrap();
    assert_eq!(name, "x");
    let input = Signal::from_pairs([(0, 2), (3, 4), (7, 9)]).unwrap();
    assert_eq!(x, solve_dridc(&input, &BdcParams::new(1, 2, 1, 2).unwrap()).unwrap());

    let (_, out, _) = invoke(&["compose", "dride(1,2,1,2); fixed(1/2)", u]);
    let sigs = signal_lines(&out);
    assert_eq!(sigs.last().unwrap().1, x.delayed(&delaycalc::tp((1, 2))).unwrap());
    assert!(out.contains("equivalent: dride(1,5/2,1,5/2)"), "{out}");
}

#[test]
fn sampling_follows_the_seed() {
    let args = |seed: &'static str| ["--seed", seed, "solve", "bde(1,3,1,3)", "[0,2) [3,4) [7,9)"];
    let a = invoke(&args("7")).1;
    assert_eq!(a, invoke(&args("7")).1);
    let least = invoke(&args("0")).1;
    let (_, x) = parse_signal_line(a.trim()).unwrap();
    let (_, lo) = parse_signal_line(least.trim()).unwrap();
    assert!(lo.leq(&x));
    let x_arg = format!("x := {}", x.support());
    assert_eq!(invoke(&["check", "bdc(1,3,1,3)", "[0,2) [3,4) [7,9)", &x_arg]).0, 0);
}

#[test]
fn data_mode_is_json() {
    for args in [
        &["--format", "data", "cc", "bridc(3,6,3,6;1,4,1,4)"][..],
        &["--format", "data", "check", "ridc(1,2,1,2)", "[0,3)", "[2,5)"][..],
        &["--format", "data", "render", "--demo", "bridc-timeline"][..],
    ] {
        let (_, out, _) = invoke(args);
        serde_json::from_str::<serde_json::Value>(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    }
}

#[test]
fn binary_reports_errors_on_stderr() {
    let out = Command::new(env!("CARGO_BIN_EXE_delaycalc"))
        .args(["solve", "ride(1,2,1,2)", "[0,3)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
