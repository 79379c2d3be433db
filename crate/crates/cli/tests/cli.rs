// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gk3"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn gk3");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn ok(args: &[&str], stdin: Option<&str>) -> Value {
    let out = run(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)
}

fn file_arg(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn diag(n: i64) -> Value {
    serde_json::json!([[(2 * n).to_string(), "0"], ["0", (2 * n).to_string()]])
}

#[test]
fn split_u_on_definite_lattice_reports_none() {
    let v = ok(&["lattice", "split-u", &file_arg("two_squares.json")], None);
    assert_eq!(v["result"], "none");
    assert_eq!(v["reason"], "definite");
}

#[test]
fn split_u_on_u_plus_e8() {
    let v = ok(&["lattice", "split-u"], Some(r#"{"body":{"lattice":{"sum":["u","e8minus"]}}}"#));
    assert_eq!(v["result"], "split");
    assert_eq!(v["complement"]["summary"]["rank"], "8");
    assert_eq!(v["complement"]["summary"]["discriminant"], serde_json::json!([]));
}

#[test]
fn lpsi_of_exp_ih() {
    let v = ok(&["class", "lpsi", &file_arg("exp_ih.json")], None);
    assert_eq!(v["summary"]["rank"], "2");
    assert_eq!(v["reduced"], diag(1));
}

#[test]
fn class_check_reports_type() {
    let v = ok(&["class", "check", &file_arg("exp_ih.json")], None);
    assert_eq!(v["type"], "A");
    assert_eq!(v["norm"], "4");
}

#[test]
fn shioda_inose_reports() {
    for n in 1..=3 {
        let v = ok(&["mirror", "shioda-inose", "--n", &n.to_string()], None);
        assert_eq!(v["verified"], true);
        assert_eq!(v["t_x_reduced"], diag(n));
        assert_eq!(v["moduli_dims"]["family"], serde_json::json!(["20", "0"]));
        assert_eq!(v["moduli_dims"]["dual"], serde_json::json!(["0", "20"]));
        assert_eq!(v["ns_x"]["signature"], serde_json::json!(["2", "20", "0"]));
    }
}

#[test]
fn classical_mirror_dims() {
    let v = ok(&["mirror", "classical", "--n", "2"], None);
    assert_eq!(v["verified"], true);
    assert_eq!(v["moduli_dims"]["family"], serde_json::json!(["1", "19"]));
    assert_eq!(v["moduli_dims"]["dual"], serde_json::json!(["19", "1"]));
}

#[test]
fn emitted_families_check_as_mirror() {
    for (file, cmd) in [("si_n1_families.json", "shioda-inose"), ("classical_n1_families.json", "classical")] {
        let emitted = ok(&["mirror", cmd, "--documents"], None);
        let stored: Value = serde_json::from_str(&std::fs::read_to_string(data(file)).unwrap()).unwrap();
        assert_eq!(emitted, stored, "{file} is stale");
        let v = ok(&["mirror", "check", &file_arg(file)], None);
        assert_eq!(v["mirror"]["verified"], true);
        assert_eq!(v["first"]["polarization"]["passed"], true);
        assert_eq!(v["second"]["polarization"]["passed"], true);
    }
}

#[test]
fn swapped_families_are_not_polarized() {
    let doc = ok(&["mirror", "shioda-inose", "--documents"], None);
    let first = serde_json::json!({ "body": { "family": {
        "polarization": doc["body"]["families"][0]["polarization"],
        "member": doc["body"]["families"][1]["member"],
    } } });
    let v = ok(&["mirror", "check"], Some(&first.to_string()));
    assert_eq!(v["polarization"]["passed"], false);
}

#[test]
fn mismatched_families_are_not_mirror() {
    let a = ok(&["mirror", "shioda-inose", "--n", "1", "--documents"], None);
    let b = ok(&["mirror", "shioda-inose", "--n", "2", "--documents"], None);
    let doc = serde_json::json!({ "body": { "families": [a["body"]["families"][0], b["body"]["families"][1]] } });
    let v = ok(&["mirror", "check"], Some(&doc.to_string()));
    assert_eq!(v["mirror"]["verified"], false);
}

#[test]
fn dolgachev_degree_two() {
    let v = ok(&["mirror", "dolgachev", &file_arg("degree_two.json")], None);
    assert_eq!(v["result"], "mirror");
    assert_eq!(v["n"]["summary"]["rank"], "19");
    assert_eq!(v["n"]["summary"]["signature"], serde_json::json!(["1", "18", "0"]));
    assert_eq!(v["mirror_transcendental"]["summary"]["signature"], serde_json::json!(["2", "1", "0"]));
}

#[test]
fn gk3_pair_commands() {
    let f = file_arg("k3_pair.json");
    assert_eq!(ok(&["gk3", "validate", &f], None)["status"], "Verified");
    assert_eq!(ok(&["gk3", "classify-hk", &f], None)["all_hold"], true);
    assert_eq!(ok(&["gk3", "profile", &f], None)["positive_index_bounded"], true);
    let nst = ok(&["gk3", "ns-t", &f], None);
    assert_eq!(nst["ns"]["summary"]["rank"], "22");
    let k = ok(&["rigid", "kahler", &f], None);
    assert_eq!(k["kind"], "kahler_rigid");
    assert_eq!(k["invariant"], diag(1));
    assert_eq!(ok(&["rigid", "complex", &f], None)["kind"], "complex_rigid");
}

#[test]
fn bfield_output_feeds_back() {
    let out = run(&["class", "bfield", &file_arg("irrational_bfield.json")], None);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["header"]["sqrt_d"], 2);
    let v = ok(&["class", "check"], Some(&String::from_utf8(out.stdout).unwrap()));
    assert_eq!(v["type"], "A");
    assert_eq!(v["field"], "2");
}

#[test]
fn pairing_of_two_classes() {
    let doc = r#"{"body":{"classes":[{"exp":{"omega":{"e1":1,"f1":1}}},{"exp":{"omega":{"e1":1,"f1":1}}}]}}"#;
    let v = ok(&["class", "pairing"], Some(doc));
    // The Mukai square of e^{iw} vanishes.
    assert_eq!(v["pairing"], serde_json::json!({ "re": "0", "im": "0" }));
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], Option<&str>, i32, &str); 8] = [
        (&["class", "check", "BAD_FIELD"], None, 2, "not squarefree"),
        (&["class", "check", "ZERO_DEN"], None, 2, "zero denominator"),
        (&["class", "check", "NOT_GCY"], None, 1, "not a generalized CY class"),
        (&["lattice", "info"], Some(r#"{"body":{"class":{"exp":{"omega":{"e1":1}}}}}"#), 2, "expected lattice"),
        (&["lattice", "info"], Some(r#"{"body":{"lattice":"u"},"extra":1}"#), 2, "unknown field"),
        (&["lattice", "info"], Some("{"), 2, "EOF"),
        (&["lattice", "reduce2"], Some(r#"{"body":{"lattice":"u"}}"#), 1, ""),
        (&["rigid", "forms", "--max-det", "x"], None, 2, ""),
    ];
    for (args, stdin, code, msg) in cases {
        let args: Vec<String> = args
            .iter()
            .map(|a| match *a {
                "BAD_FIELD" => file_arg("bad_field.json"),
                "ZERO_DEN" => file_arg("zero_denominator.json"),
                "NOT_GCY" => file_arg("not_gcy.json"),
                a => a.to_string(),
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args, stdin);
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {stderr}");
        assert!(stderr.contains(msg), "{args:?}: {stderr}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["rigid", "survey", "--max-det", "8"];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(a.stdout, b.stdout);
    let seq = run(&["rigid", "survey", "--max-det", "8", "--sequential"], None);
    assert_eq!(a.stdout, seq.stdout);
    let v = json(&a);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn numbers_are_strings() {
    fn walk(v: &Value) {
        match v {
            Value::Number(n) => panic!("bare number {n}"),
            Value::Array(a) => a.iter().for_each(walk),
            Value::Object(m) => m.values().for_each(walk),
            _ => {}
        }
    }
    walk(&ok(&["mirror", "shioda-inose", "--n", "2"], None));
    walk(&ok(&["gk3", "profile", &file_arg("k3_pair.json")], None));
}

#[test]
fn text_format_lists_leaves() {
    let out = run(&["--format", "text", "class", "lpsi", &file_arg("exp_ih.json")], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "summary.rank: 2"), "{text}");
}

#[test]
fn reports_reserialize_identically() {
    for args in [
        vec!["mirror".to_string(), "shioda-inose".to_string()],
        vec!["gk3".to_string(), "ns-t".to_string(), file_arg("k3_pair.json")],
        vec!["class".to_string(), "bfield".to_string(), file_arg("irrational_bfield.json")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&args, None);
        let v = json(&out);
        assert_eq!(String::from_utf8(out.stdout).unwrap(), serde_json::to_string_pretty(&v).unwrap() + "\n");
    }
}
