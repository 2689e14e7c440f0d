use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermono")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn report_json_is_versioned() {
    let out = run(&["report", "--d", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "hypermono/1");
    assert_eq!(v["jtheory"]["status"], "skipped");
    assert_eq!(v["pham"]["status"], "computed");
    assert_eq!(v["theorem_summary"]["value"]["disc_part"]["value"], "Z/2");
    assert_eq!(v["all_pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["jtheory", "check", "--d", "6"]).status.code(), Some(2));
    assert_eq!(run(&["batch", "--from", "5", "--to", "4"]).status.code(), Some(2));
    assert_eq!(run(&["jtheory", "check", "--d", "8"]).status.code(), Some(0));
    // an explicit shift is reported, not asserted
    let out = run(&["jtheory", "check", "--d", "8", "--shift", "27"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], false);
    assert_eq!(run(&["pham", "--d", "9"]).status.code(), Some(2));
}

#[test]
fn chart_and_sparse_output() {
    let svg = run(&["ext", "--p", "3", "--d", "9", "--smax", "6", "--nmax", "9", "--emit", "svg"]);
    assert!(svg.status.success());
    let s = String::from_utf8(svg.stdout).unwrap();
    assert!(s.starts_with("<svg") && s.contains("viewBox="));
    let sparse = String::from_utf8(run(&["pham", "--d", "3", "--emit", "sparse"]).stdout).unwrap();
    let m = hypermono::pham::parse_sparse(&sparse).unwrap();
    assert_eq!(m.cols(), 81);
}

#[test]
fn batch_and_tables() {
    let out = run(&["batch", "--from", "3", "--to", "100"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["all_pass"], true);
    let t = run(&["mcg-table", "--from", "1", "--to", "30"]);
    assert_eq!(json(&t).as_array().unwrap().len(), 30);
    let q = run(&["quadform", "scan", "--n", "4", "--g", "2", "--arf", "0"]);
    assert_eq!(json(&q)["all_of_form_k_times_lattice"], true);
}
