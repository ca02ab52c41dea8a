use serde_json::Value;
use std::process::{Command, Output};

fn rdqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdqm")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

/// Drops the only field allowed to differ between runs.
fn without_durations(mut v: Value) -> Value {
    for r in v["records"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("duration_ms");
    }
    v
}

#[test]
fn verify_at_safe_point() {
    let out = rdqm(&["verify", "--family", "qr", "--params", "q=1/2,a=1/5000,b=1/3,d=2/9", "--n", "5", "--twist", "i", "--dset", "1,2", "--caln", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["schema"], 1);
    let rec = &rep["records"][0];
    assert_eq!(rec["status"], "pass");
    assert_eq!(rec["ratio"], rec["details"]["closed_form_a"]);
    assert_eq!(rec["index_sets"]["dbar"], serde_json::json!([0, 3]));
    assert_eq!(rep["summary"]["passed"], 1);
}

#[test]
fn verify_trivial_instance() {
    let out = rdqm(&["verify", "--family", "k", "--params", "p=1/2", "--n", "4", "--twist", "i", "--dset", "0", "--caln", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["records"][0]["ratio"], "1/1");
}

#[test]
fn degenerate_point_is_not_a_failure() {
    let out = rdqm(&["verify", "--family", "qr", "--params", "q=1/2,a=1/2048,b=1/4,d=1/8", "--n", "5", "--dset", "1,2", "--caln", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["records"][0]["status"], "degenerate");
    assert_eq!(rep["summary"]["degenerate"], 1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--family", "qr", "--params", "q=1/0,a=1/2,b=1/3,d=1/5", "--n", "5", "--dset", "1"][..],
        &["verify", "--family", "nope", "--dset", "1"],
        &["verify", "--family", "m", "--twist", "ii", "--dset", "1"],
        &["verify", "--family", "qr", "--dset", "5", "--caln", "3"],
        &["suite", "--only", "colour=red"],
        &["frobnicate"],
    ] {
        assert_eq!(rdqm(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn suite_filter_and_precision() {
    let out = rdqm(&["suite", "--only", "family=qb"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    let recs = rep["records"].as_array().unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r["family"] == "qb"));

    let out = rdqm(&["suite", "--only", "family=qr", "--only", "kind=darboux", "--precision", "128"]);
    let rep = report(&out);
    let recs = rep["records"].as_array().unwrap();
    assert_eq!(recs.len(), 3);
    for r in recs {
        assert_eq!(r["status"], "pass");
        // 2^-64
        assert_eq!(r["details"]["tolerance"], "5.421e-20");
    }
}

#[test]
fn reports_are_stable() {
    let args = ["suite", "--only", "family=k"];
    let a = without_durations(report(&rdqm(&args)));
    let b = without_durations(report(&rdqm(&args)));
    assert_eq!(a, b);
}

#[test]
fn darboux_and_families_commands() {
    let out = rdqm(&["darboux", "--family", "qr", "--tol-exp", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep["summary"]["failed"], 0);
    assert!(rep["records"].as_array().unwrap().iter().any(|r| r["kind"] == "special-case"));

    let out = rdqm(&["families", "--family", "ha"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert!(rep["records"].as_array().unwrap().iter().any(|r| r["kind"] == "limit"));
}

#[test]
fn report_written_to_file() {
    let path = std::env::temp_dir().join(format!("rdqm-report-{}.json", std::process::id()));
    let out = rdqm(&["verify", "--family", "c", "--dset", "1,2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep["records"][0]["status"], "pass");
    std::fs::remove_file(path).ok();
}
