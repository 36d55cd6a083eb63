use std::process::{Command, Output};

use serde_json::Value;

fn homlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("one JSON document on stdout")
}

#[test]
fn output_is_a_single_json_line() {
    let out = homlab(&["tw", "Petersen"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert_eq!(json(&out)["width"], 4);
}

#[test]
fn human_output_is_indented() {
    let out = homlab(&["--human", "hom", "--pattern", "K2", "--target", "C5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 1);
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["count"], "10");
}

#[test]
fn hom_modes_agree() {
    let counts: Vec<Value> = [None, Some("brute"), Some("td")]
        .into_iter()
        .map(|mode| {
            let mut args = vec!["hom", "--pattern", "C5", "--target", "Petersen"];
            if let Some(m) = mode {
                args.extend(["--mode", m]);
            }
            json(&homlab(&args))["count"].clone()
        })
        .collect();
    // closed 5-walks in the Petersen graph: 3^5 + 5*1^5 + 4*(-2)^5
    assert_eq!(counts, vec![Value::from("120"); 3]);
}

#[test]
fn sub_counts_pentagons_in_petersen() {
    let out = homlab(&["sub", "--pattern", "C5", "--target", "Petersen"]);
    assert_eq!(json(&out)["count"], "12");
}

#[test]
fn graphs_load_from_files() {
    let dir = std::env::temp_dir().join(format!("homlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g6 = dir.join("k4.g6");
    std::fs::write(&g6, "C~\n").unwrap();
    let js = dir.join("p3.json");
    std::fs::write(&js, r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let out = homlab(&[
        "sub",
        "--pattern",
        js.to_str().unwrap(),
        "--target",
        g6.to_str().unwrap(),
    ]);
    assert_eq!(json(&out)["count"], "12");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("homlab-out-{}.json", std::process::id()));
    let out = homlab(&["--out", path.to_str().unwrap(), "spasm", "--pattern", "C4"]);
    assert!(out.status.success() && out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["members"].as_array().unwrap().len(), 3);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn cfi_json_format() {
    let out = homlab(&["--format", "json", "cfi", "--base", "K4", "--twist", "0"]);
    let v = json(&out);
    assert_eq!(v["n"], 16);
    assert_eq!(v["graph"]["n"], 16);
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 48);
    assert_eq!(v["gadgets"]["twist"], serde_json::json!([0]));
}

#[test]
fn basis_rows_are_rational_strings() {
    let v = json(&homlab(&["basis", "--pattern", "K3"]));
    assert_eq!(v, serde_json::json!([["Bw", "1/6"]]));
}

#[test]
fn witness_and_verify_round_trip() {
    let v = json(&homlab(&["witness", "K3", "--k", "1"]));
    let (g, h) = (
        v["witness"]["g"].as_str().unwrap(),
        v["witness"]["h"].as_str().unwrap(),
    );
    let ok = homlab(&["verify", "--pattern", "K3", "--k", "1", "--g", g, "--h", h]);
    assert!(ok.status.success());
    assert_eq!(json(&ok)["witness"], true);
    let not = homlab(&["verify", "--pattern", "K3", "--k", "2", "--g", g, "--h", h]);
    assert_eq!(not.status.code(), Some(1));
}

#[test]
fn wl_reports_distinguishing_dimension() {
    let one = json(&homlab(&["wl", "--k", "1", "--g", "2K3", "--h", "C6"]));
    let two = json(&homlab(&["wl", "--k", "2", "--g", "2K3", "--h", "C6"]));
    assert_eq!(
        (one["distinguished"].clone(), two["distinguished"].clone()),
        (false.into(), true.into())
    );
}

#[test]
fn invariant_audit_exits_cleanly() {
    let out = homlab(&["audit", "--pattern", "C5", "--k", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verdict"], "invariant");
    assert_eq!(v["htw"], 2);
    assert!(v["witness"].is_null());
}

#[test]
fn oddo_profile_and_gap_report() {
    let p = json(&homlab(&[
        "oddo", "--f", "K3", "--g", "K3", "--map", "0,1,2",
    ]));
    assert_eq!(p["oddomorphism"], true);
    let r = json(&homlab(&["oddo", "--f", "K3", "--g", "K3"]));
    assert_eq!(
        (r["hom_untwisted"].clone(), r["hom_twisted"].clone()),
        ("12".into(), "0".into())
    );
    assert_eq!(r["strict"], true);
    assert_eq!(r["search"]["status"], "found");
}

#[test]
fn corpus_filter_runs_selected_checks() {
    let out = homlab(&["corpus", "--module", "wl-refine"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
    assert_eq!(v["passed"], 1);
}

#[test]
fn invalid_input_exits_with_usage_code() {
    for args in [
        vec!["tw", "not-a-graph!"],
        vec!["cfi", "--base", "K3", "--twist", "9"],
        vec!["oddo", "--f", "K3", "--g", "K3", "--map", "0,1"],
        vec!["audit", "--k", "1"],
        vec!["frobnicate"],
    ] {
        let out = homlab(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stderr.is_empty());
    }
}
