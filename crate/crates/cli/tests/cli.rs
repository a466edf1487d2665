use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn symbeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symbeta"))
        .args(args)
        .env_remove("SYMBETA_TOL")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn records(args: &[&str]) -> Vec<Value> {
    let mut all = args.to_vec();
    all.extend(["--format", "jsonl"]);
    let out = symbeta(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

fn result(recs: &[Value], key: &str) -> Value {
    recs.iter()
        .find(|r| r["record"] == "result" && r["key"] == key)
        .unwrap_or_else(|| panic!("no result {key}"))["value"]
        .clone()
}

fn regime(recs: &[Value]) -> &Value {
    recs.iter().find(|r| r["record"] == "regime").unwrap()
}

fn rows<'a>(recs: &'a [Value], name: &str) -> Vec<&'a Value> {
    recs.iter().filter(|r| r["record"] == name).collect()
}

fn warnings(recs: &[Value]) -> Vec<String> {
    rows(recs, "warning")
        .iter()
        .map(|w| w["message"].as_str().unwrap().to_string())
        .collect()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symbeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn expand_golden_ratio_example() {
    let r = records(&["expand", "--m", "1", "--beta", "golden", "--a", "1", "--digits", "8"]);
    assert_eq!(result(&r, "greedy"), "11000000");
    assert_eq!(result(&r, "lazy"), "01111111");
    assert_eq!(result(&r, "quasi_greedy"), "10101010…");
    assert_eq!(result(&r, "unique"), false);
}

#[test]
fn expand_zero_and_rational_base() {
    let r = records(&["expand", "--m", "3", "--beta", "3.5", "--a", "0", "--digits", "6"]);
    assert_eq!(result(&r, "greedy"), "000000");
    assert_eq!(result(&r, "lazy"), "000000");
    assert_eq!(result(&r, "unique"), true);
    let r = records(&["expand", "--m", "3", "--beta", "7/2", "--a", "1"]);
    assert!(result(&r, "greedy").as_str().unwrap().starts_with("31220"));
}

#[test]
fn check_examples() {
    let r = records(&["check", "--m", "3", "--beta", "4"]);
    assert_eq!(regime(&r)["transitivity"], "transitive");
    assert_eq!(result(&r, "forbidden_words"), 0);

    let r = records(&["check", "--m", "2", "--beta", "beta_T"]);
    assert_eq!(regime(&r)["transitivity"], "transitive");
    assert_eq!(result(&r, "beta_t_branch"), true);

    let r = records(&["check", "--m", "4", "--beta", "4", "--depth", "3"]);
    assert_eq!(result(&r, "interval_digits"), serde_json::json!([2]));
    assert!(result(&r, "preimage_count_min").as_u64().unwrap() >= 2);
    assert!(warnings(&r).iter().all(|w| !w.contains("fewer than 2")));
    assert_eq!(rows(&r, "forbidden").len(), 2);
}

#[test]
fn words_counts_full_shift() {
    let r = records(&["words", "--m", "2", "--beta", "3", "--depth", "4"]);
    let counts: Vec<u64> = rows(&r, "counts").iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![3, 9, 27, 81]);
}

#[test]
fn spectrum_examples() {
    let r = records(&["spectrum", "--m", "3", "--beta", "4", "--depth", "3"]);
    assert!((f(&result(&r, "lambda")) - 4.0).abs() < 1e-12);
    assert!(f(&result(&r, "lk_difference")) < 1e-8);

    let r = records(&[
        "spectrum",
        "--potential",
        "geometric:c=1,theta=0.25,K=20",
        "--depth",
        "5",
    ]);
    assert!(f(&result(&r, "depth_increment")) <= f(&result(&r, "holder_bound")));
    assert!(f(&result(&r, "psi_min")) > 0.0);
    assert!(f(&result(&r, "row_sum_residual")) < 1e-10);
    let cyl = rows(&r, "cylinders");
    assert_eq!(cyl.len(), 10);
    assert!(cyl.iter().all(|c| c["depth"] == 5));
    assert!(warnings(&r).iter().any(|w| w.contains("transitivity unknown")));
}

fn curve(args: &[&str]) -> Vec<(f64, f64)> {
    let mut all = vec!["zerotemp", "--format", "csv"];
    all.extend(args);
    let out = symbeta(&all);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let ti = header.iter().position(|h| *h == "t").unwrap();
    let hi = header.iter().position(|h| *h == "entropy").unwrap();
    lines
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[ti].parse().unwrap(), c[hi].parse().unwrap())
        })
        .collect()
}

#[test]
fn zerotemp_examples() {
    let flat = curve(&["--m", "3", "--beta", "4", "--depth", "2"]);
    assert_eq!(flat.len(), 10);
    assert!(flat.iter().all(|(_, h)| (h - 4f64.ln()).abs() < 1e-10));

    let unique = curve(&["--m", "3", "--beta", "4", "--depth", "2", "--potential", "digit:0,0.2,1,0.5"]);
    assert!(unique.last().unwrap().1 < 1e-3);
    assert!(unique.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12));

    let tied = curve(&["--m", "3", "--beta", "4", "--depth", "2", "--potential", "digit:0,1,1,0.5"]);
    assert!((tied.last().unwrap().1 - 2f64.ln()).abs() < 1e-3);
}

#[test]
fn thermo_checks_hold() {
    let r = records(&[
        "thermo",
        "--potential",
        "geometric:c=1,theta=0.25,K=20",
        "--t-grid",
        "1,4,16",
    ]);
    for row in rows(&r, "thermo") {
        assert!(f(&row["min_variational_gap"]) >= -1e-8);
        assert!(f(&row["identity_defect"]) < 1e-8);
        assert!(f(&row["inf_minimum"]) >= f(&row["entropy"]) - 1e-8);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["spectrum", "--potential", "block:2:12=1,21=0.5,*=0", "--format", "jsonl"];
    let a = symbeta(&args);
    let b = symbeta(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_precedence_and_round_trip() {
    let path = temp_file("run.conf", "# test\nm = 4\nbeta = 5\ntol = 1e-9\ndepth = 3\n");
    let p = path.to_str().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_symbeta"))
        .args(["check", "--config", p, "--depth", "2", "--print-config"])
        .env("SYMBETA_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in ["m = 4", "beta = 5", "tol = 1e-9", "depth = 2"] {
        assert!(text.lines().any(|l| l == line), "{line:?} in\n{text}");
    }

    let out = Command::new(env!("CARGO_BIN_EXE_symbeta"))
        .args(["check", "--print-config"])
        .env("SYMBETA_TOL", "1e-7")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "tol = 1e-7"));
    assert!(text.lines().any(|l| l == "m = 3"));

    let again = temp_file("again.conf", &text);
    let out = symbeta(&["check", "--config", again.to_str().unwrap(), "--print-config"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&symbeta(&["spectrum", "--m", "3", "--beta", "9"])), 2);
    assert_eq!(code(&symbeta(&["spectrum", "--format", "xml"])), 2);
    assert_eq!(code(&symbeta(&["zerotemp", "--t-grid", "4,2"])), 2);
    assert_eq!(code(&symbeta(&["spectrum", "--potential", "digit:1"])), 2);
    let bad = temp_file("bad.conf", "colour = red\n");
    assert_eq!(code(&symbeta(&["check", "--config", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&symbeta(&["expand", "--a", "100"])), 2);

    assert_eq!(code(&symbeta(&["zerotemp", "--m", "2", "--beta", "3"])), 3);
    assert_eq!(code(&symbeta(&["spectrum", "--m", "1", "--beta", "golden"])), 3);

    let out = symbeta(&["spectrum", "--max-iter", "2", "--tol", "1e-15"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stdout).contains("max_iter"));
}
