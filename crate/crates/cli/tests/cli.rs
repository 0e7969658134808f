use std::path::Path;
use std::process::{Command, Output};

use dighom::HomologySummary;
use serde_json::Value;

fn dighom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dighom")).args(args).output().expect("binary runs")
}

fn dighom_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dighom")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).display().to_string();
    let mut full = vec!["mlp", "gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let o = dighom(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn hom_json(args: &[&str]) -> Value {
    let mut full = vec!["hom"];
    full.extend_from_slice(args);
    full.push("--json");
    let o = dighom(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn mlp_gen_headers() {
    let o = dighom(&["mlp", "gen", "4", "10", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("17 70"));
    assert_eq!(text.lines().count(), 71);
    assert_eq!(stdout(&dighom(&["mlp", "gen", "1"])), "1 0\n");
    let bad = dighom(&["mlp", "gen", "0", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn hom_examples() {
    let dir = tempfile::tempdir().unwrap();
    let m22 = gen(dir.path(), "m22.txt", &["2", "2"]);
    let v = hom_json(&["path", &m22, "--reduced"]);
    assert_eq!(v["betti"], serde_json::json!([0, 1]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["summary"]["field"], "Q");
    assert!(v["wall_time_ms"].as_f64().unwrap() >= 0.0);

    let big = gen(dir.path(), "big.txt", &["4", "10", "3"]);
    assert_eq!(hom_json(&["dfc", &big])["betti"], serde_json::json!([1, 54, 0]));
    assert_eq!(hom_json(&["path", &big, "--field", "gf2"])["betti"], serde_json::json!([0, 0, 54]));
    assert_eq!(hom_json(&["path", &m22, "--non-reduced"])["betti"], serde_json::json!([1, 1]));
    assert_eq!(hom_json(&["oracle-path", &m22])["betti"], serde_json::json!([0, 1]));

    let text = stdout(&dighom(&["hom", "path", &m22]));
    assert!(text.contains("betti    [0, 1]"), "{text}");
}

#[test]
fn report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let m = gen(dir.path(), "m.txt", &["3", "2", "2"]);
    let out = dir.path().join("report.json");
    let o = dighom(&["hom", "path", &m, "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let summary: HomologySummary = serde_json::from_value(v["summary"].clone()).unwrap();
    let direct = dighom::path::path_betti(&dighom::MlpSpec::new(vec![3, 2, 2]).unwrap().digraph(), 2, true, dighom::FieldSpec::Rationals);
    assert_eq!(summary, direct);
    assert_eq!(serde_json::to_value(&summary).unwrap(), v["summary"]);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let o = dighom(&["hom", "path", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 2\n0 1\n1 7\n").unwrap();
    let o = dighom(&["hom", "path", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let o = dighom(&["hom", "nosuch", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let m = gen(dir.path(), "m.txt", &["2", "2"]);
    assert_eq!(dighom(&["hom", "oracle-dfc", &m, "--field", "gf2"]).status.code(), Some(2));
}

#[test]
fn guards_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cyc = dir.path().join("cyc.txt");
    std::fs::write(&cyc, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    let cyc = cyc.to_str().unwrap();
    assert_eq!(dighom(&["hom", "path", cyc]).status.code(), Some(3));
    assert_eq!(hom_json(&["path", cyc, "--max-dim", "2"])["betti"], serde_json::json!([0, 1, 0]));
    let big = gen(dir.path(), "big.txt", &["4", "10", "3"]);
    assert_eq!(dighom(&["hom", "path", &big, "--max-paths", "50"]).status.code(), Some(3));
    let o = dighom(&["hom", "oracle-path", &big]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_examples() {
    for widths in [&["2", "2"][..], &["1", "5"], &["3"], &["4", "10", "3", "--fields", "q,gf2,gf3"]] {
        let mut args = vec!["verify"];
        args.extend_from_slice(widths);
        let o = dighom(&args);
        assert!(o.status.success(), "{}", stdout(&o));
        assert!(stdout(&o).ends_with("PASS\n"));
    }
    let o = dighom(&["verify", "2", "3", "--random", "5", "--seed", "11"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("seed 11"));
    assert_eq!(dighom(&["verify", "0"]).status.code(), Some(2));
}

#[test]
fn curve_examples() {
    let dir = tempfile::tempdir().unwrap();
    let unit = gen(dir.path(), "unit.txt", &["2", "3", "2", "--weights", "unit"]);
    let o = dighom(&["curve", &unit]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "threshold,normalized,beta_0,beta_1,beta_2\n1,1,0,0,2\n");

    let plain = gen(dir.path(), "plain.txt", &["2", "2"]);
    assert_eq!(dighom(&["curve", &plain]).status.code(), Some(2));

    let w = gen(dir.path(), "w.txt", &["4", "10", "3", "--weights", "random", "--seed", "3"]);
    let one = dighom(&["curve", &w, "--threads", "1"]);
    let eight = dighom_env(&["curve", &w], "HOMOLOGY_THREADS", "8");
    assert!(one.status.success() && eight.status.success());
    assert_eq!(one.stdout, eight.stdout);
    let csv = stdout(&one);
    assert_eq!(csv.lines().count(), 71);
    assert!(csv.lines().nth(1).unwrap().ends_with(",0,0,54"));
    assert!(csv.lines().last().unwrap().starts_with(|c: char| c.is_ascii_digit()));

    let dfc = stdout(&dighom(&["curve", &w, "--kind", "dfc", "--threads", "2"]));
    assert!(dfc.lines().nth(1).unwrap().ends_with(",1,54,0"));
}
