use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blowup-betti")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn bijection_six_column_example() {
    let v = json(&["bijection", "--diagram", "5,5,4,3,3,1", "--marks", "2,3,5"]);
    assert_eq!(v, serde_json::json!({ "Y1": "5,3,1", "Y2": "2,2,2", "m": 3 }));
    let back = json(&["bijection", "--inverse", "--y1", "5,3,1", "--y2", "2,2,2", "--m", "3"]);
    assert_eq!(back, serde_json::json!({ "diagram": "5,5,4,3,3,1", "marks": "2,3,5" }));
}

#[test]
fn betti_two_point_example() {
    let v = json(&["betti", "--rank", "1", "--m", "1", "--N", "1", "--method", "closed"]);
    assert_eq!(v["pretty"], "1 + t^2");
    assert_eq!(v["bettiNumbers"], serde_json::json!(["1", "0", "1"]));
    assert_eq!(v["eulerNumber"], "2");
    let text = stdout(&["betti", "--m", "1", "--N", "1", "--format", "text"]);
    assert!(text.starts_with("P_t = 1 + t^2\n"), "{text}");
}

#[test]
fn betti_check_all_and_rational_delta() {
    let v = json(&["betti", "--rank", "2", "--c1c", "1", "--delta", "5/4", "--check-all"]);
    assert_eq!(v["pretty"], "1 + 2*t^2 + 2*t^4 + t^6");
    assert_eq!(v["checkAll"]["status"], "PASS");
    let v = json(&["betti", "--rank", "2", "--delta", "1", "--method", "morse"]);
    assert_eq!(v["pretty"], "1 + t^2");
}

#[test]
fn verify_acceptance_run() {
    let v = json(&["verify", "--suite", "rank1", "--m", "0..3", "--order", "10"]);
    assert_eq!(v["status"], "PASS");
    assert!(v["firstMismatch"].is_null());
    let v = json(&["verify", "--suite", "higherrank", "--rank", "2", "--m", "0..1", "--c1c", "-1..1", "--order", "6"]);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["params"]["cases"], 6);
    let v = json(&["verify", "--suite", "gottsche", "--m", "8", "--order", "8", "--check-all"]);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_failure_exits_one() {
    let out = run(&["verify", "--suite", "gottsche", "--m", "2", "--order", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "FAIL");
    assert_eq!(v["firstMismatch"]["q"], "3");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["betti", "--bogus"],
        vec!["betti", "--rank", "2", "--N", "1"],
        vec!["betti", "--N", "1", "--delta", "1"],
        vec!["betti", "--N", "20"],
        vec!["verify", "--suite", "rank1", "--order", "13"],
        vec!["verify", "--suite", "rank1", "--m", "3..1", "--order", "2"],
        vec!["series", "--order", "1.5"],
        vec!["bijection", "--diagram", "1,2"],
        vec!["bijection", "--diagram", "2,2", "--marks", "1"],
        vec!["character", "--diagram", "1", "--diagram", "1", "--marks", "1"],
        vec!["partitions", "--N", "3", "--jobs", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn max_size_raises_the_bound() {
    let v = json(&["betti", "--N", "17", "--max-size", "17"]);
    assert_eq!(v["eulerNumber"], "297");
    assert_eq!(run(&["verify", "--suite", "rank1", "--order", "14", "--max-size", "13"]).status.code(), Some(2));
}

#[test]
fn partitions_and_fixed_points() {
    let v = json(&["partitions", "--N", "4"]);
    assert_eq!(v["partitions"], serde_json::json!(["1,1,1,1", "2,1,1", "2,2", "3,1", "4"]));
    let v = json(&["partitions", "--N", "4", "--max-columns", "2"]);
    assert_eq!(v["count"], 3);
    let v = json(&["fixed-points", "--m", "1", "--N", "1"]);
    assert_eq!(v["count"], 2);
    let exps: Vec<u64> = v["fixedPoints"].as_array().unwrap().iter().map(|p| p["exponent"].as_u64().unwrap()).collect();
    let mut sorted = exps.clone();
    sorted.sort();
    assert_eq!(sorted, vec![0, 1]);
}

#[test]
fn character_reports_dimension_and_index() {
    let v = json(&["character", "--diagram", "1"]);
    assert_eq!(v["pretty"], "t2 + t1");
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["morseIndex"], 0);
    let v = json(&["character", "--diagram", "1", "--marks", "1"]);
    assert_eq!(v["dimension"], 0);
    let v = json(&["character", "--diagram", "5,5,4,3,3,1", "--marks", "2,3,5"]);
    assert_eq!(v["dimension"], 30);
}

#[test]
fn series_sides_agree() {
    let e = json(&["series", "--rank", "2", "--c1c", "-1", "--m", "1", "--order", "3"]);
    let p = json(&["series", "--rank", "2", "--c1c", "-1", "--m", "1", "--order", "3", "--side", "product"]);
    assert_eq!(e["series"], p["series"]);
    let v = json(&["series", "--order", "3"]);
    assert_eq!(v["pretty"], "1 + q + (1 + t^2)*q^2 + O(q^3)");
    let v = json(&["series", "--order", "3", "--hodge"]);
    assert_eq!(v["pretty"], "1 + q + (1 + u)*q^2 + O(q^3)");
    let v = json(&["series", "--order", "4", "--m", "2", "--check-all"]);
    assert_eq!(v["checkAll"], "PASS");
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["betti", "--rank", "2", "--c1c", "1", "--delta", "13/4", "--method", "morse"],
        vec!["series", "--rank", "2", "--m", "1", "--order", "4"],
        vec!["fixed-points", "--rank", "3", "--delta", "2"],
    ] {
        let one = [args.clone(), vec!["--jobs", "1"]].concat();
        let four = [args.clone(), vec!["--jobs", "4"]].concat();
        assert_eq!(stdout(&one), stdout(&four), "{args:?}");
        assert_eq!(stdout(&args), stdout(&args), "{args:?}");
    }
    let strip = |args: &[&str]| {
        let mut v = json(args);
        v.as_object_mut().unwrap().remove("elapsedMs");
        v
    };
    let args = ["verify", "--suite", "wallRatio", "--m", "0..3", "--order", "6"];
    assert_eq!(strip(&[&args[..], &["--jobs", "1"]].concat()), strip(&[&args[..], &["--jobs", "3"]].concat()));
}
