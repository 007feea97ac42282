use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_parwreath"))
        .args(args)
        .env_remove("PARWREATH_THREADS")
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn without_elapsed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn order_with_enumeration() {
    let (code, v) = run(&[
        "order",
        "--n",
        "2",
        "--m",
        "2",
        "--structure",
        "txp",
        "--enumerate",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "OK");
    assert_eq!(v["results"]["formula_order"], 64);
    assert_eq!(v["results"]["enumerated_order"], 64);
    assert_eq!(v["results"]["equal"], true);
}

#[test]
fn order_of_trivial_and_small_wreath() {
    let (code, v) = run(&["order", "--n", "1", "--m", "1", "--structure", "sxp"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["formula_order"], 1);
    let (_, v) = run(&["order", "--n", "3", "--m", "2", "--structure", "sxp"]);
    assert_eq!(v["results"]["formula_order"], 72);
}

#[test]
fn verify_main_at_two_two() {
    let (code, v) = run(&["verify", "--n", "2", "--m", "2", "--theorem", "main"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "OK");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    let computed = |needle: &str| {
        checks
            .iter()
            .find(|c| c["name"].as_str().unwrap().contains(needle))
            .map(|c| c["computed"].as_str().unwrap().to_owned())
            .unwrap()
    };
    assert_eq!(computed("rank T(X,P) (unit"), "4");
    assert_eq!(computed("rank Σ(X,P) (unit"), "3");
    assert_eq!(computed("rank Γ(X,P) (unit"), "3");
}

#[test]
fn verify_wreath_three_two() {
    let (code, v) = run(&["verify", "--n", "3", "--m", "2", "--theorem", "wreath"]);
    assert_eq!(code, 0);
    let check = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().contains("|<x, y>|"))
        .unwrap()
        .clone();
    assert_eq!(check["computed"], "72");
    assert_eq!(check["pass"], true);
}

#[test]
fn verify_trivial_partition_is_unsupported() {
    let (code, v) = run(&["verify", "--n", "1", "--m", "4"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "UNSUPPORTED_CASE");
    assert!(v["message"].as_str().unwrap().contains("T_X"));
}

#[test]
fn verify_oversize_is_budget_exceeded() {
    let (code, v) = run(&[
        "verify",
        "--n",
        "4",
        "--m",
        "4",
        "--theorem",
        "wreath",
        "--limit",
        "1000",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "BUDGET_EXCEEDED");
}

#[test]
fn rank_methods() {
    let (code, v) = run(&[
        "rank",
        "--n",
        "2",
        "--m",
        "2",
        "--structure",
        "txp",
        "--method",
        "lemma1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"]["value"], 4);
    assert_eq!(v["rank"]["witness"].as_array().unwrap().len(), 4);

    let (code, v) = run(&[
        "rank",
        "--n",
        "2",
        "--m",
        "2",
        "--structure",
        "txp",
        "--method",
        "exhaustive",
        "--max-k",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"]["value"], 4);
    assert_eq!(v["rank"]["method"], "EXHAUSTIVE");
    assert_eq!(
        v["rank"]["certificate"]["rejected_count"],
        1 + 64 + 2016 + 41664
    );

    let (_, v) = run(&["rank", "--n", "2", "--m", "2", "--structure", "sxp"]);
    assert_eq!(v["rank"]["value"], 2);
}

#[test]
fn rank_budget_exceeded() {
    let (code, v) = run(&[
        "rank",
        "--n",
        "2",
        "--m",
        "2",
        "--structure",
        "txp",
        "--method",
        "exhaustive",
        "--budget",
        "100",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "BUDGET_EXCEEDED");
    assert_eq!(v["results"]["partial_certificate"]["rejected_count"], 65);
}

#[test]
fn rank_bound_too_small() {
    let (code, v) = run(&[
        "rank",
        "--n",
        "2",
        "--m",
        "2",
        "--structure",
        "txp",
        "--method",
        "exhaustive",
        "--max-k",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"]["value"], Value::Null);
    assert_eq!(v["results"]["exceeds"], 2);
}

#[test]
fn closure_from_file_and_dump() {
    let input = scratch("t2.txt");
    std::fs::write(&input, "2\n# label: swap\n1 0\n1 1\n").unwrap();
    let dump = scratch("t2_dump.txt");
    let words = scratch("t2_words.txt");
    let (code, v) = run(&[
        "closure",
        "--input",
        input.to_str().unwrap(),
        "--dump",
        dump.to_str().unwrap(),
        "--words",
        words.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["order"], 4);
    let dumped = std::fs::read_to_string(&dump).unwrap();
    let elements: Vec<&str> = dumped
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(elements.len(), 4);
    assert_eq!(elements[0], "0 1");
    assert_eq!(std::fs::read_to_string(&words).unwrap().lines().count(), 4);

    // the dump is itself a valid element-set file
    let (_, again) = run(&["closure", "--input", dump.to_str().unwrap()]);
    assert_eq!(again["results"]["order"], 4);
}

#[test]
fn closure_of_empty_generator_file() {
    let input = scratch("empty5.txt");
    std::fs::write(&input, "5\n").unwrap();
    let (code, v) = run(&["closure", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["order"], 1);
}

#[test]
fn closure_from_builder_flags() {
    let (code, v) = run(&["closure", "--generators", "sxp", "--n", "2", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["order"], 48);
    assert_eq!(v["results"]["is_group"], true);
}

#[test]
fn closure_limit_overflow() {
    let (code, v) = run(&[
        "closure",
        "--generators",
        "txp",
        "--n",
        "2",
        "--m",
        "2",
        "--limit",
        "10",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "BUDGET_EXCEEDED");
    assert_eq!(v["results"]["limit"], 10);
}

#[test]
fn parse_errors_are_input_errors() {
    let input = scratch("bad.txt");
    std::fs::write(&input, "3\n0 1 2\n0 1 7\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_parwreath"))
        .args(["closure", "--input", input.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn bad_flags_exit_one() {
    let (code, _) = run(&["order", "--n", "2"]);
    assert_eq!(code, 1);
    let (code, _) = run(&["rank", "--n", "2", "--m", "2", "--structure", "nope"]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_independent_of_threads_and_repeatable() {
    let base = ["rank", "--n", "2", "--m", "3", "--structure", "sigma"];
    let outputs: Vec<Value> = ["1", "2", "8", "1"]
        .iter()
        .map(|t| {
            let mut args = base.to_vec();
            args.extend(["--threads", t]);
            without_elapsed(run(&args).1)
        })
        .collect();
    assert_eq!(outputs[0]["rank"]["value"], 3);
    for o in &outputs[1..] {
        assert_eq!(o, &outputs[0]);
    }
}

#[test]
fn threads_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_parwreath"))
        .args(["closure", "--generators", "gamma", "--n", "2", "--m", "2"])
        .env("PARWREATH_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["order"], 16);
}

#[test]
fn text_format_carries_the_same_content() {
    let out = Command::new(env!("CARGO_BIN_EXE_parwreath"))
        .args([
            "verify",
            "--n",
            "2",
            "--m",
            "2",
            "--theorem",
            "lemma2",
            "--format",
            "text",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, json) = run(&["verify", "--n", "2", "--m", "2", "--theorem", "lemma2"]);
    assert!(text.contains("status: OK"));
    for c in json["checks"].as_array().unwrap() {
        assert!(text.contains(c["name"].as_str().unwrap()));
    }
}

#[test]
fn json_schema_keys() {
    let (_, v) = run(&["rank", "--n", "2", "--m", "2", "--structure", "gamma"]);
    let obj = v.as_object().unwrap();
    for key in [
        "command",
        "params",
        "status",
        "checks",
        "rank",
        "elapsed_ms",
    ] {
        assert!(obj.contains_key(key), "missing {key}");
    }
    let rank = v["rank"].as_object().unwrap();
    for key in ["value", "method", "witness", "certificate"] {
        assert!(rank.contains_key(key), "missing rank.{key}");
    }
    let cert = v["rank"]["certificate"].as_object().unwrap();
    assert!(cert.contains_key("search_space") && cert.contains_key("rejected_count"));
}
