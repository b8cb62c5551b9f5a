use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gwakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwakit"))
        .args(args)
        .env_remove("GWAKIT_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn enumerate_prints_counts() {
    for (spec, n) in [
        ("8:5", "736"),
        ("4:2", "10"),
        ("klein4", "10"),
        ("1:1", "1"),
        ("8:2", "32"),
    ] {
        let o = gwakit(&["gwa", "enumerate", "--group", spec]);
        assert_eq!(code(&o), 0, "{spec}");
        assert_eq!(stdout(&o).trim(), n, "{spec}");
    }
}

#[test]
fn unknown_spec_is_usage_error() {
    assert_eq!(code(&gwakit(&["gwa", "enumerate", "--group", "9:9"])), 2);
    assert_eq!(
        code(&gwakit(&["gwa", "enumerate", "--group", "nonsense"])),
        2
    );
    assert_eq!(code(&gwakit(&["gwa", "frobnicate"])), 2);
}

#[test]
fn order_bound_gives_capacity_exit() {
    let o = Command::new(env!("CARGO_BIN_EXE_gwakit"))
        .args(["gwa", "enumerate", "--group", "8:5"])
        .env("GWAKIT_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(
        code(&gwakit(&[
            "--max-order",
            "4",
            "xmod",
            "enumerate",
            "--source",
            "1:1",
            "--range",
            "8:1"
        ])),
        3
    );
}

#[test]
fn classify_c2_cubed() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("list.json");
    assert_eq!(
        code(&gwakit(&[
            "gwa",
            "enumerate",
            "--group",
            "8:5",
            "--out",
            p(&list)
        ])),
        0
    );

    let csv_path = dir.path().join("table.csv");
    let json_path = dir.path().join("table.json");
    assert_eq!(
        code(&gwakit(&[
            "gwa",
            "classify",
            "--in",
            p(&list),
            "--out",
            p(&csv_path)
        ])),
        0
    );
    assert_eq!(
        code(&gwakit(&[
            "gwa",
            "classify",
            "--in",
            p(&list),
            "--format",
            "json",
            "--out",
            p(&json_path)
        ])),
        0
    );

    let csv_text = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv_text.lines();
    assert_eq!(
        lines.next(),
        Some("family,members,representative,ideals,nilpotency_class,condition1")
    );
    let csv_rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(csv_rows.len(), 14);
    let total: usize = csv_rows
        .iter()
        .map(|r| r[1].parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 736);

    // both renderings carry the same values
    let json: Value = serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(json["kind"], "classification");
    let rows = json["payload"].as_array().unwrap();
    assert_eq!(rows.len(), csv_rows.len());
    for (j, c) in rows.iter().zip(&csv_rows) {
        let from_json = [
            j["family"].to_string(),
            j["members"].to_string(),
            j["representative_index"].to_string(),
            j["ideals"].to_string(),
            j["nilpotency_class"].to_string(),
            j["condition1"].to_string(),
        ];
        assert_eq!(&from_json[..], &c[..]);
    }
}

#[test]
fn classify_trivial_group_documents_convention() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("list.json");
    gwakit(&["gwa", "enumerate", "--group", "1:1", "--out", p(&list)]);
    let o = gwakit(&["gwa", "classify", "--in", p(&list), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["payload"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["nilpotency_class"], 1);
    assert!(rows[0]["note"].as_str().unwrap().contains("convention"));
}

#[test]
fn malformed_catalogs_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "[1, 2").unwrap();
    assert_eq!(code(&gwakit(&["gwa", "classify", "--in", p(&bad)])), 4);
    assert_eq!(
        code(&gwakit(&[
            "gwa",
            "classify",
            "--in",
            p(&dir.path().join("missing.json"))
        ])),
        4
    );

    // right shape, wrong kind
    let xm = dir.path().join("x.json");
    gwakit(&[
        "xmod",
        "enumerate",
        "--source",
        "1:1",
        "--range",
        "1:1",
        "--out",
        p(&xm),
    ]);
    assert_eq!(code(&gwakit(&["gwa", "classify", "--in", p(&xm)])), 4);

    // a table that is not a group
    let list = dir.path().join("l.json");
    gwakit(&["gwa", "enumerate", "--group", "2:1", "--out", p(&list)]);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&list).unwrap()).unwrap();
    v["payload"][0]["group"]["table"][1] = serde_json::json!([1, 1]);
    fs::write(&list, v.to_string()).unwrap();
    assert_eq!(code(&gwakit(&["gwa", "classify", "--in", p(&list)])), 4);
}

#[test]
fn xmod_enumerate_reports_counts() {
    let o = gwakit(&[
        "xmod",
        "enumerate",
        "--source",
        "4:1",
        "--range",
        "4:2",
        "--filter",
        "c1",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "pre=416 full=184\nc1=88\n");
    let o = gwakit(&["xmod", "enumerate", "--source", "1:1", "--range", "1:1"]);
    assert_eq!(stdout(&o), "pre=1 full=1\n");
}

#[test]
fn outputs_are_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let base = ["xmod", "enumerate", "--source", "4:1", "--range", "4:2"];
    let mut args_a = base.to_vec();
    args_a.extend(["--jobs", "1", "--out", p(&a)]);
    let mut args_b = base.to_vec();
    args_b.extend(["--jobs", "4", "--out", p(&b)]);
    assert_eq!(code(&gwakit(&args_a)), 0);
    assert_eq!(code(&gwakit(&args_b)), 0);
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);

    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["payload"]["pre_count"], 416);
    assert_eq!(v["payload"]["full_count"], 184);
    assert_eq!(v["payload"]["items"].as_array().unwrap().len(), 416);
    assert_eq!(v["provenance"]["params"]["source"], "4:1");
}

#[test]
fn xmod_check_accepts_fresh_catalog_and_flags_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.json");
    gwakit(&[
        "xmod",
        "enumerate",
        "--source",
        "2:1",
        "--range",
        "4:2",
        "--out",
        p(&x),
    ]);
    assert_eq!(code(&gwakit(&["xmod", "check", "--in", p(&x)])), 0);

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&x).unwrap()).unwrap();
    v["payload"]["full_count"] = Value::from(0);
    fs::write(&x, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(code(&gwakit(&["xmod", "check", "--in", p(&x)])), 5);
}

#[test]
fn roundtrip_of_trivial_actions_passes() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.json");
    let r = dir.path().join("r.json");
    gwakit(&[
        "xmod",
        "enumerate",
        "--source",
        "2:1",
        "--source-index",
        "0",
        "--range",
        "4:2",
        "--range-index",
        "0",
        "--out",
        p(&x),
    ]);
    let o = gwakit(&["simplicial", "roundtrip", "--in", p(&x), "--out", p(&r)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(v["kind"], "roundtrip_report");
    let rows = v["payload"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows
        .iter()
        .all(|row| row["roundtrip_ok"] == true && row["bracket_zero"] == true));
}

#[test]
fn roundtrip_of_empty_catalog_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.json");
    let empty = serde_json::json!({
        "schema_version": 1,
        "kind": "xmod_enumeration",
        "payload": {"pre_count": 0, "full_count": 0, "items": []},
        "provenance": {"command": "manual", "params": {}, "tool_version": "0"}
    });
    fs::write(&x, empty.to_string()).unwrap();
    let r = dir.path().join("r.json");
    let o = gwakit(&["simplicial", "roundtrip", "--in", p(&x), "--out", p(&r)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(v["payload"], serde_json::json!([]));
}

#[test]
fn roundtrip_failures_exit_five_and_still_write_report() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.json");
    let r = dir.path().join("r.json");
    gwakit(&[
        "xmod",
        "enumerate",
        "--source",
        "4:1",
        "--range",
        "4:2",
        "--out",
        p(&x),
    ]);
    let o = gwakit(&["simplicial", "roundtrip", "--in", p(&x), "--out", p(&r)]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&r).unwrap()).unwrap();
    let rows = v["payload"].as_array().unwrap();
    assert_eq!(rows.len(), 184);
    let failed = rows
        .iter()
        .filter(|row| row["roundtrip_ok"] != true)
        .count();
    assert_eq!(code(&o), if failed == 0 { 0 } else { 5 });
    if failed > 0 {
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(&format!("{failed} round trips failed")));
    }
}

#[test]
fn ideals_and_morphisms_verbs() {
    let o = gwakit(&["gwa", "ideals", "--group", "klein4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 10);
    // the trivial action on Kl4 makes every subgroup an ideal
    let o = gwakit(&["gwa", "ideals", "--group", "klein4", "--index", "0"]);
    assert!(stdout(&o).ends_with("ideals=5\n"));

    let o = gwakit(&[
        "gwa",
        "morphisms",
        "--group",
        "2:1",
        "--from",
        "0",
        "--to",
        "0",
    ]);
    assert_eq!(stdout(&o).lines().last(), Some("morphisms=2"));
    assert_eq!(
        code(&gwakit(&[
            "gwa",
            "morphisms",
            "--group",
            "2:1",
            "--from",
            "0",
            "--to",
            "7"
        ])),
        2
    );

    let o = gwakit(&["xmod", "actions", "--source", "1:1", "--range", "4:2"]);
    assert_eq!(stdout(&o), "actions=10\n");
}
