use std::process::Command;

use freecurve::generator::table1::admissible_cases;
use freecurve_cli::run;
use serde_json::Value;

fn call(args: &[&str], input: &str) -> (i32, Vec<Value>, String) {
    let mut argv = vec!["freecurve"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    let lines = String::from_utf8(out)
        .unwrap()
        .lines()
        .filter_map(|l| serde_json::from_str(l).ok())
        .collect();
    (code, lines, String::from_utf8(err).unwrap())
}

fn items<'a>(lines: &'a [Value], kind: &str) -> Vec<&'a Value> {
    lines.iter().filter(|v| v["item"] == kind).collect()
}

fn summary(lines: &[Value]) -> &Value {
    let last = lines.last().expect("summary line");
    assert_eq!(last["item"], "summary");
    last
}

fn jsonl(lines: &[Value]) -> String {
    lines.iter().map(|v| v.to_string() + "\n").collect()
}

#[test]
fn enumerate_hred_at_four() {
    let (code, lines, _) = call(&["enumerate", "--n", "4", "--what", "hred"], "");
    assert_eq!(code, 0);
    assert_eq!(items(&lines, "segment").len(), 24);
    let count = items(&lines, "count")[0];
    assert_eq!(count["formula"], 24);
    assert_eq!(count["brute_force"], 24);
    assert_eq!(summary(&lines)["pass"], 1);
}

#[test]
fn enumerate_components_agree() {
    let (code, lines, _) = call(&["enumerate", "--n", "4", "--n-max", "6", "--what", "components"], "");
    assert_eq!(code, 0);
    for c in items(&lines, "count") {
        assert_eq!(c["formula"], c["brute_force"]);
        assert_eq!(c["formula"], c["enumerated"]);
    }
    assert_eq!(items(&lines, "count").len(), 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["enumerate", "--n", "2", "--what", "segments"], "").0, 2);
    assert_eq!(call(&["enumerate", "--n", "3", "--what", "hred"], "").0, 2);
    assert_eq!(call(&["enumerate", "--n", "4"], "").0, 2);
    assert_eq!(call(&["generate", "--n", "3"], "").0, 2);
    assert_eq!(call(&["count", "--n", "6", "--n-max", "5"], "").0, 2);
    assert_eq!(call(&["bogus"], "").0, 2);
    assert_eq!(call(&["generate", "--n", "4", "--checks", "syzygy,nope"], "").0, 2);
    assert_eq!(call(&["verify"], "not json\n").0, 2);
    assert_eq!(call(&["verify"], "{\"n\": 4}\n").0, 2);
    assert_eq!(call(&["--help"], "").0, 0);
}

#[test]
fn generate_ploski_quartic() {
    let (code, lines, _) = call(&["generate", "--n", "4", "--family", "ploski", "--seed", "7"], "");
    assert_eq!(code, 0);
    let certs = items(&lines, "certificate");
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["family"], "ploski-even");
    assert_eq!(certs[0]["matrix"]["linear"], serde_json::json!(["y", "z", "0"]));
}

#[test]
fn generate_table1_covers_every_row() {
    let (code, lines, _) = call(&["generate", "--n", "4", "--family", "table1"], "");
    assert_eq!(code, 0);
    let certs = items(&lines, "certificate");
    assert_eq!(certs.len(), admissible_cases(4).len());
    let mut rows: Vec<u64> = certs.iter().map(|c| c["case"]["row"].as_u64().unwrap()).collect();
    rows.dedup();
    rows.sort();
    rows.dedup();
    assert_eq!(rows, vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn generated_corpus_verifies() {
    let (_, lines, _) = call(&["generate", "--n", "4", "--family", "table1", "--seed", "11"], "");
    let (code, out, err) = call(&["verify", "--checks", "syzygy,curl,route,squarefree"], &jsonl(&lines));
    assert_eq!(code, 0, "{err}");
    let s = summary(&out);
    assert_eq!(s["pass"], s["items"]);
    assert_eq!(s["fail"], 0);
}

#[test]
fn tjurina_at_four_is_seven() {
    let (code, lines, _) = call(&["tjurina", "--n", "4", "--family", "table1"], "");
    assert_eq!(code, 0);
    for t in items(&lines, "tjurina") {
        assert_eq!(t["tau"], 7);
    }
    let (_, corpus, _) = call(&["generate", "--n", "4", "--family", "table1"], "");
    let (code, from_stream, _) = call(&["tjurina"], &jsonl(&corpus));
    assert_eq!(code, 0);
    assert_eq!(items(&from_stream, "tjurina").len(), admissible_cases(4).len());
}

#[test]
fn corrupted_certificate_exits_one() {
    let (_, lines, _) = call(&["generate", "--n", "5", "--family", "table1", "--seed", "2"], "");
    let mut certs: Vec<Value> = items(&lines, "certificate").into_iter().cloned().collect();
    let g = certs[0]["g"].as_str().unwrap().to_string();
    let abc: Vec<i64> = certs[0]["abc"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
    // a pure power v^5 is scaled by 5 times its abc entry, so pick a nonzero one
    let var = ["x", "y", "z"][abc.iter().position(|&c| c != 0).unwrap()];
    certs[0]["g"] = Value::String(format!("{g} + {var}^5"));
    let (code, out, err) = call(&["verify", "--checks", "syzygy,curl,route"], &jsonl(&certs));
    assert_eq!(code, 1);
    assert!(err.contains("1 item(s) failed"));
    let s = summary(&out);
    assert_eq!(s["fail"], 1);
    assert_eq!(s["failures"][0]["first_failure"], "syzygy");
    assert_eq!(s["failures"][0]["index"], 0);
}

#[test]
fn summary_tallies_match_items() {
    let (_, lines, _) = call(&["generate", "--n", "4", "--n-max", "5", "--checks", "syzygy,route,tjurina"], "");
    let certs = items(&lines, "certificate");
    let passed = certs
        .iter()
        .filter(|c| c["verdicts"]["first_failure"].is_null())
        .count();
    let s = summary(&lines);
    assert_eq!(s["items"], certs.len());
    assert_eq!(s["pass"], passed);
    assert_eq!(s["fail"], certs.len() - passed);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("freecurve-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.jsonl");
    let (code, stdout, _) = call(&["count", "--n", "4", "--out", path.to_str().unwrap()], "");
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn strip_timing(text: &str) -> String {
    text.lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            if let Some(o) = v.as_object_mut() {
                o.remove("timing_ms");
            }
            v.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn output_independent_of_worker_count() {
    let bin = env!("CARGO_BIN_EXE_freecurve");
    let args = ["generate", "--n", "4", "--n-max", "6", "--seed", "5", "--checks", "syzygy,route"];
    let runs: Vec<String> = ["1", "4"]
        .iter()
        .map(|w| {
            let out = Command::new(bin).args(args).env("FREECURVE_WORKERS", w).output().unwrap();
            assert_eq!(out.status.code(), Some(0));
            strip_timing(&String::from_utf8(out.stdout).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let bad = Command::new(bin)
        .args(["count", "--n", "4"])
        .env("FREECURVE_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_freecurve");
    let ok = Command::new(bin).args(["count", "--n", "4", "--n-max", "6"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).args(["count"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
