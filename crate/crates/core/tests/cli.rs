use std::process::Command;

use wedge_gw::cli::{run, Output};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("wedge-gw").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Output {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = call(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn find<'a>(o: &'a Output, keys: &[(&str, &str)]) -> Vec<&'a str> {
    o.rows
        .iter()
        .filter(|r| keys.iter().all(|(k, v)| r.keys.get(*k).map(String::as_str) == Some(*v)))
        .map(|r| r.value.as_str())
        .collect()
}

#[test]
fn two_point_degree_one() {
    let o = json(&["invariant", "--zero", "0", "--inf", "0", "--qmax", "1"]);
    assert_eq!(find(&o, &[("kind", "connected"), ("d", "1"), ("g", "0")]), ["1"]);
}

#[test]
fn classical_triple_products() {
    let o = json(&["invariant", "--qmax", "0", "--zero", "0", "0", "--y-basis", "--kind", "connected"]);
    assert_eq!(find(&o, &[("insertions", "tau0(1) tau0(1) tau0(h)")]), ["1"]);
    assert!(find(&o, &[("insertions", "tau0(1) tau0(1) tau0(1)")]).is_empty());
    let o = json(&["invariant", "--qmax", "0", "--inf", "0", "0", "--y-basis", "--kind", "connected"]);
    assert_eq!(find(&o, &[("insertions", "tau0(h) tau0(h) tau0(1)")]), ["-t"]);
    assert_eq!(find(&o, &[("insertions", "tau0(h) tau0(h) tau0(h)")]), ["t^2"]);
}

#[test]
fn empty_bracket_is_exponential() {
    let o = json(&["invariant", "--qmax", "3", "--kind", "disconnected"]);
    let expected = [("0", "0", "1"), ("1", "-2", "1"), ("2", "-4", "1/2"), ("3", "-6", "1/6")];
    assert_eq!(o.rows.len(), 4);
    for (d, u, v) in expected {
        assert_eq!(find(&o, &[("d", d), ("u", u)]), [v]);
    }
}

#[test]
fn hurwitz_and_hodge_examples() {
    let o = json(&["hurwitz", "--mu", "2", "--genus", "0"]);
    assert_eq!(find(&o, &[("match", "yes")]), ["1/2"]);
    let o = json(&["hurwitz", "--mu", "3", "--genus", "0"]);
    assert_eq!(find(&o, &[("match", "yes")]), ["1"]);
    let o = json(&["hodge", "--mu", "1", "--genus", "0"]);
    assert_eq!(find(&o, &[("match", "yes")]), ["1"]);
    let o = json(&["hodge", "--mu", "(2,1)"]);
    assert_eq!(o.rows.len(), 3);
    assert!(o.rows.iter().all(|r| r.keys["match"] == "yes"));
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "routes", "--d", "2", "--qmax", "2", "--ulo", "-6", "--uhi", "1", "--zorder", "2"][..],
        &["verify", "commutators", "--kmax", "3"],
        &["verify", "toda", "--qmax", "2", "--budget", "2", "--ulo", "-4", "--uhi", "0"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(out.trim_end().ends_with("0 failed"), "{out}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["verify", "nothing"]).0, 2);
    assert_eq!(call(&["invariant", "--bogus"]).0, 2);
    assert_eq!(call(&["invariant", "--ulo", "3", "--uhi", "1"]).0, 2);
    assert_eq!(call(&["hurwitz", "--mu", "1,2"]).0, 2);
    assert_eq!(call(&["gfun", "--n", "4", "--m", "3"]).0, 2);
    assert_eq!(call(&[]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn json_round_trips_and_output_is_deterministic() {
    let args = ["gfun", "--n", "1", "--m", "1", "--zorder", "2", "--format", "json"];
    let (_, first, _) = call(&args);
    let (_, second, _) = call(&args);
    assert_eq!(first, second);
    let parsed: Output = serde_json::from_str(&first).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", first);
}

#[test]
fn csv_has_header_and_one_line_per_row() {
    let (code, out, _) = call(&["invariant", "--zero", "1", "--qmax", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "insertions,kind,d,g,u,value");
    assert!(lines.contains(&"tau1(0),connected,1,0,-2,-t"));
    assert_eq!(lines.len(), 5);
}

#[test]
fn gfun_routes_agree() {
    let op = json(&["gfun", "--n", "1", "--m", "1", "--zorder", "2"]);
    let loc = json(&["gfun", "--n", "1", "--m", "1", "--zorder", "2", "--route", "localization"]);
    assert_eq!(op.rows, loc.rows);
}

#[test]
fn parallel_output_matches_serial() {
    let serial = call(&["verify", "routes", "--d", "1", "--zorder", "2"]);
    let parallel = call(&["verify", "routes", "--d", "1", "--zorder", "2", "--parallel", "4"]);
    assert_eq!(serial, parallel);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wedge-gw");
    let ok = Command::new(bin).args(["hurwitz", "--mu", "2", "--genus", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("1/2"));
    let bad = Command::new(bin).args(["invariant", "--format", "xml"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
