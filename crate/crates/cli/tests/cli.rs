use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distortion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn gen_to(dir: &Path, example: &str, params: Option<&str>) -> String {
    let path = dir.join(format!("{example}.json"));
    let path_str = path.to_str().unwrap().to_string();
    let mut args = vec!["gen", "--example", example, "--out", &path_str];
    if let Some(p) = params {
        args.extend(["--params", p]);
    }
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path_str
}

#[test]
fn matching_lb3_audits_to_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "matching_lb3", None);
    let report = json(&run(&["audit", "--instance", &path, "--outcome", "F2,F1"]));
    let v = report["audits"][0]["value"].as_f64().unwrap();
    assert!((v - 3.0).abs() <= 1e-6, "{v}");
    assert_eq!(report["audits"][0]["exact"], true);
}

#[test]
fn alg2_on_median_topchoice_bad_stays_within_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "median_topchoice_bad", None);
    let report = json(&run(&["solve", "--instance", &path, "--mechanism", "alg2"]));
    let median = report["audits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["objective"] == "median")
        .expect("median audit");
    assert!(median["value"].as_f64().unwrap() <= 3.0 + 1e-6);

    let alg1 = json(&run(&["solve", "--instance", &path, "--mechanism", "alg1"]));
    assert_eq!(alg1["outcome"]["winner"], "W");
    let audit = json(&run(&[
        "audit",
        "--instance",
        &path,
        "--outcome",
        "W",
        "--objective",
        "median",
    ]));
    assert!(audit["audits"][0]["value"].as_f64().unwrap() >= 5.0);
}

#[test]
fn generated_instances_round_trip_and_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "sum5_tight", Some("q=4,eps=1e-3"));
    let text = fs::read_to_string(&path).unwrap();
    let again = run(&["gen", "--example", "sum5_tight", "--params", "q=4,eps=1e-3"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
    let file = distortion_core::io::parse_instance(&text).unwrap();
    assert_eq!(distortion_core::io::serialize_instance(&file), text);

    let a = run(&["gen", "--random", "--agents", "5", "--facilities", "3", "--seed", "11"]);
    let b = run(&["gen", "--random", "--agents", "5", "--facilities", "3", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sampled_audits_need_a_seed_and_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "sum5_tight", Some("q=3"));
    assert_eq!(
        run(&["audit", "--instance", &path, "--outcome", "W", "--samples", "5"])
            .status
            .code(),
        Some(2)
    );
    let args = [
        "audit",
        "--instance",
        &path,
        "--outcome",
        "W",
        "--samples",
        "5",
        "--seed",
        "9",
    ];
    let a = json(&run(&args));
    assert_eq!(a["audits"][0]["exact"], false);
    assert_eq!(a["audits"][0]["seed"], 9);
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["repro", "--example", "split_pair"]).status.code(), Some(2));
    assert_eq!(run(&["repro", "--example", "matching_lb3"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--example", "nope"]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"facilities": ["A"], "agents": [["A"]], "problem": {"preset": "social_choice_sum"}}"#,
    )
    .unwrap();
    let out = run(&["solve", "--instance", bad.to_str().unwrap(), "--mechanism", "alg1"]);
    assert_eq!(out.status.code(), Some(2));

    let path = gen_to(dir.path(), "matching_lb3", None);
    assert_eq!(
        run(&["solve", "--instance", &path, "--mechanism", "alg9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["audit", "--instance", &path, "--outcome", "F1,F1"]).status.code(),
        Some(2)
    );
}

#[test]
fn reduction_reports_beta_and_guarantee() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kc.json");
    let out = run(&[
        "gen",
        "--random",
        "--agents",
        "5",
        "--facilities",
        "4",
        "--seed",
        "2",
        "--preset",
        "k_center:2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report = json(&run(&[
        "solve",
        "--instance",
        path.to_str().unwrap(),
        "--mechanism",
        "reduce:k_center_greedy",
    ]));
    assert_eq!(report["beta"], 2.0);
    assert_eq!(report["guarantees"][0]["bound"], 5.0);
    assert!(report["audits"][0]["value"].as_f64().unwrap() <= 5.0 + 1e-6);
}
