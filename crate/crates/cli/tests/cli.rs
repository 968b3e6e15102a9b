use std::fs;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::thread::sleep;
use std::time::{Duration, Instant};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_subsums"));
    c.env_remove("SUBSUMS_MAX_ORDER");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn subsums")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Every stdout line must be a JSON object.
fn jsonl(args: &[&str]) -> Vec<Value> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let text = ok(&full);
    assert!(!text.is_empty(), "{args:?} printed nothing");
    text.lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap_or_else(|e| panic!("{args:?}: bad json {l:?}: {e}"));
            assert!(v.is_object());
            v
        })
        .collect()
}

fn usage_error(args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(2), "{args:?} should be a usage error");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    assert!(err.starts_with("error:"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn sigma_of_the_symmetric_example() {
    let out = ok(&["sigma", "--group", "Z14", "--set", "1,2,3,11,12,13"]);
    assert!(out.contains("|Σ(S)| = 13"), "{out}");
    let v = &jsonl(&["sigma", "--group", "Z14", "--set", "1,2,3,11,12,13"])[0];
    assert_eq!(v["size"], 13);
    assert_eq!(v["aperiodic"], true);
}

#[test]
fn negative_literals_mean_negation() {
    let a = ok(&["sigma", "--group", "Z14", "--set", "-1,-2,-3,1,2,3"]);
    let b = ok(&["sigma", "--group", "Z14", "--set", "1,2,3,11,12,13"]);
    assert_eq!(a, b);
}

#[test]
fn sigma_star_drops_the_empty_sum() {
    let v = &jsonl(&["sigma-star", "--group", "Z7", "--set", "1,2"])[0];
    assert_eq!(v["size"], 3);
    assert_eq!(v["elements"], "{1, 2, 3}");
    let out = ok(&["sigma-star", "--group", "Z7", "--set", "1,2"]);
    assert!(out.contains("|Σ*(S)| = 3"));
}

#[test]
fn kwedge_single_and_all() {
    let v = jsonl(&["kwedge", "--group", "Z8", "--set", "1,2,3", "--k", "2"]);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0]["elements"], "{3, 4, 5}");
    let all = jsonl(&["kwedge", "--group", "Z8", "--set", "1,2,3"]);
    let sizes: Vec<u64> = all.iter().map(|v| v["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![1, 3, 3, 1]);
    assert!(ok(&["kwedge", "--group", "Z8", "--set", "1,2,3", "--k", "2"]).contains("|2∧A| = 3"));
}

#[test]
fn period_reports_stabiliser() {
    let v = &jsonl(&["period", "--group", "Z6", "--set", "0,2,4"])[0];
    assert_eq!(v["order"], 3);
    assert_eq!(v["aperiodic"], false);
    assert!(ok(&["period", "--group", "Z6", "--set", "0,1"]).contains("aperiodic: true"));
}

#[test]
fn lambda_at_one_point_and_everywhere() {
    let v = &jsonl(&["lambda", "--group", "Z8", "--set", "0,1", "--x", "3"])[0];
    assert_eq!(v["lambda"], 2);
    let all = jsonl(&["lambda", "--group", "Z8", "--set", "0,1"]);
    assert_eq!(all.len(), 8);
    assert_eq!(all[0]["lambda"], 0);
    assert_eq!(all[1]["lambda"], 1);
    assert!(ok(&["lambda", "--group", "Z8", "--set", "0,1", "--x", "3"]).contains("λ_B(3) = 2"));
}

#[test]
fn hp_rep_lists_certificates() {
    let all = jsonl(&["hp-rep", "--group", "Z12", "--set", "1,2"]);
    assert!(!all.is_empty());
    assert!(all.iter().all(|v| v["kind"] == "ap" || v["kind"] == "vosper"));
    let first = jsonl(&["hp-rep", "--group", "Z12", "--set", "1,2", "--first"]);
    assert_eq!(first.len(), 1);
    assert!(all.len() >= first.len());
    assert!(ok(&["hp-rep", "--group", "Z12", "--set", "1,2"]).contains("|Ŝ| = 5"));
}

#[test]
fn faithful_growth() {
    let v = &jsonl(&["faithful", "--group", "Z11", "--set", "1,2"])[0];
    assert_eq!(v["faithful"], true);
    assert_eq!(v["super_faithful"], false);
}

#[test]
fn layers_in_the_quotient() {
    let v = jsonl(&["layers", "--group", "Z12", "--set", "1,3,4,6", "--subgroup", "4"]);
    assert_eq!(v[0]["quotient"], "Z4");
    let total: u64 = v.iter().map(|l| l["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 3);
}

#[test]
fn ap_stats_needs_an_asymmetric_set() {
    let v = &jsonl(&["ap-stats", "--group", "Z12", "--set", "4,1,5", "--subgroup", "4"])[0];
    assert_eq!(v["h"], 3);
    assert_eq!(v["ell"], 2);
    let v = &jsonl(&["ap-stats", "--group", "Z9", "--set", "1,2", "--subgroup", "0"])[0];
    assert_eq!(v["claims"]["lemma"], true);
    assert!(ok(&["ap-stats", "--group", "Z9", "--set", "1,2", "--subgroup", "0"]).contains("claim I: true"));
    let out = run(&["ap-stats", "--group", "Z12", "--set", "1,3,4,6", "--subgroup", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_main_theorem_on_z13() {
    let v = jsonl(&["check", "--claim", "MAIN_T2", "--group", "Z13", "--set", "1,2,3"]);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0]["branch"], "(i')+(ii)");
    assert_eq!(v[0]["slack"], "0/1");
    assert_eq!(v[0]["holds"], true);
    let text = ok(&["check", "--claim", "MAIN_T2", "--group", "Z13", "--set", "1,2,3"]);
    assert!(text.contains("slack = 0/1") && text.contains("result: holds"), "{text}");
}

#[test]
fn check_with_every_auxiliary_flag() {
    let cases: &[&[&str]] = &[
        &["--claim", "LEMMA_12", "--group", "Z11", "--set", "1,2,3", "--b", "0,1,4", "--x", "2", "--x2", "5"],
        &["--claim", "LEMMA_14", "--group", "Z11", "--set", "1,2,3", "--b", "0,1,4", "--t", "2"],
        &["--claim", "LEMMA_20", "--group", "Z11", "--set", "1,2,3", "--b", "0,1"],
        &["--claim", "KNESER", "--group", "Z12", "--set", "0,3", "--y", "0,6"],
        &["--claim", "PREHISTORIC", "--group", "Z12", "--set", "1,2,3", "--y", "0,6", "--subgroup", "6"],
        &["--claim", "KWEDGE_T11", "--group", "Z12", "--set", "0,6,1", "--k", "2"],
        &["--claim", "KWEDGE_T11", "--group", "Z8", "--set", "0,4", "--k", "1", "--subgroup", "4"],
        &["--claim", "OBS_APERIODIC", "--group", "Z11", "--set", "1,2,3", "--t-subset", "1,2"],
        &["--claim", "LEMMA_2S1", "--group", "Z3xZ6", "--set", "(1,0),(0,2),(0,1)"],
    ];
    for c in cases {
        let mut args = vec!["check"];
        args.extend_from_slice(c);
        let v = &jsonl(&args)[0];
        assert_eq!(v["holds"], true, "{c:?}");
        ok(&args);
    }
    let v = &jsonl(&["check", "--claim", "KWEDGE_T11", "--group", "Z8", "--set", "0,4", "--k", "1", "--subgroup", "4"])[0];
    assert_eq!(v["branch"], "2-coset");
}

#[test]
fn check_without_required_aux_is_a_usage_error() {
    usage_error(&["check", "--claim", "KNESER", "--group", "Z12", "--set", "0,3"]);
    usage_error(&["check", "--claim", "LEMMA_19", "--group", "Z8", "--set", "1,2,3"]);
}

#[test]
fn violated_claim_exits_one() {
    let out = run(&["--json", "check", "--claim", "LEMMA_19", "--group", "Z8", "--set", "1,2,3", "--b", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["slack"], "-2/1");
    assert_eq!(v["holds"], false);
}

#[test]
fn critical_number_of_z7() {
    assert!(ok(&["cr", "--group", "Z7"]).lines().next().unwrap() == "cr = 4");
    let v = &jsonl(&["cr", "--group", "Z7"])[0];
    assert_eq!(v["value"], 4);
    assert!(ok(&["cr", "--group", "Z1"]).contains("cr = 0"));
}

#[test]
fn max_order_caps_groups_from_flag_and_env() {
    usage_error(&["--max-order", "10", "sigma", "--group", "Z14", "--set", "1"]);
    let out = bin()
        .env("SUBSUMS_MAX_ORDER", "10")
        .args(["sigma", "--group", "Z14", "--set", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .env("SUBSUMS_MAX_ORDER", "10")
        .args(["sigma", "--group", "Z8", "--set", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_are_one_line() {
    usage_error(&[]);
    usage_error(&["bogus"]);
    usage_error(&["sigma", "--group", "Z5"]);
    usage_error(&["sigma", "--group", "Q8", "--set", "1"]);
    usage_error(&["sigma", "--group", "Z14", "--set", "99"]);
    usage_error(&["sigma", "--group", "Z14", "--set", "1,,2"]);
    usage_error(&["check", "--claim", "NOPE", "--group", "Z5", "--set", "1"]);
    usage_error(&["search", "--group", "Z5", "--claims", "KNESER"]);
    usage_error(&["search", "--group", "Z5", "--symmetric", "--asymmetric"]);
    usage_error(&["search", "--claims", "CONJECTURE"]);
    usage_error(&["search", "--group", "Z5", "--claims", "LEMMA_13,CONJECTURE", "--extremal"]);
    usage_error(&["report", "--suite", "nonsense"]);
    usage_error(&["--threads", "abc", "sigma", "--group", "Z5", "--set", "1"]);
}

#[test]
fn search_to_stdout_with_constraints() {
    let recs = jsonl(&[
        "search", "--group", "Z7", "--group", "Z2xZ4", "--zero-free", "--sigma-aperiodic", "--claims", "CONJECTURE,MAIN_T2",
    ]);
    assert!(recs.iter().any(|r| r["group"] == "Z7") && recs.iter().any(|r| r["group"] == "Z2xZ4"));
    for r in &recs {
        assert!(r["slacks"].get("CONJECTURE").is_some() && r["slacks"].get("MAIN_T2").is_some());
        assert_eq!(r["flags"]["zero_free"], true);
        assert_eq!(r["flags"]["sigma_aperiodic"], true);
    }
    for (flag, key) in [("--asymmetric", "asymmetric"), ("--symmetric", "symmetric"), ("--generating", "generating")] {
        let recs = jsonl(&["search", "--group", "Z9", flag, "--claims", "LEMMA_2S"]);
        assert!(!recs.is_empty(), "{flag}");
        assert!(recs.iter().all(|r| r["flags"][key] == true), "{flag}");
    }
    let recs = jsonl(&["search", "--group", "Z9", "--size-min", "3", "--size-max", "4", "--claims", "LEMMA_2S"]);
    assert!(recs.iter().all(|r| (3..=4).contains(&r["size"].as_u64().unwrap())));
    assert_eq!(recs.len(), 84 + 126);
    let text = ok(&["search", "--group", "Z5", "--claims", "CONJECTURE"]);
    assert_eq!(text.lines().count(), 32);
}

#[test]
fn search_stop_after_and_max_order_selection() {
    let recs = jsonl(&["search", "--group", "Z9", "--stop-after", "5", "--claims", "CONJECTURE"]);
    assert_eq!(recs.len(), 5);
    let recs = jsonl(&["--max-order", "4", "search", "--zero-free", "--claims", "CONJECTURE"]);
    let groups: std::collections::BTreeSet<String> =
        recs.iter().map(|r| r["group"].as_str().unwrap().to_string()).collect();
    assert_eq!(groups.into_iter().collect::<Vec<_>>(), vec!["Z1", "Z2", "Z2xZ2", "Z3", "Z4"]);
}

#[test]
fn search_extremal_keeps_minimum_slack() {
    let recs = jsonl(&["--max-order", "8", "search", "--symmetric", "--claims", "SYM_T4", "--extremal"]);
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r["slacks"]["SYM_T4"] == "0/1"));
}

#[test]
fn search_reports_confirmed_violations_with_exit_one() {
    // The 2|S|+1 bound fails for non-generating sets in Z3xZ6.
    let out = run(&["--json", "search", "--group", "Z3xZ6", "--size-min", "4", "--size-max", "4", "--claims", "LEMMA_2S1"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.contains("\"violations\":[\"LEMMA_2S1\"]")));
    let out = run(&[
        "search", "--group", "Z3xZ6", "--size-min", "4", "--size-max", "4", "--generating", "--claims", "LEMMA_2S1",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

fn manifest(records: &Path) -> Value {
    let p = format!("{}.manifest.json", records.display());
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn search_to_file_and_resume_with_stop_after() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    let part = dir.path().join("part.jsonl");
    let f = full.to_str().unwrap();
    let p = part.to_str().unwrap();
    let args = ["search", "--group", "Z10", "--group", "Z2xZ4", "--zero-free", "--claims", "CONJECTURE,MAIN_T2"];
    let mut a = args.to_vec();
    a.extend(["--out", f]);
    let summary = ok(&a);
    assert!(summary.contains("complete"), "{summary}");
    assert_eq!(manifest(&full)["done"], true);

    let mut a = args.to_vec();
    a.extend(["--out", p, "--stop-after", "100"]);
    assert!(ok(&a).contains("interrupted"));
    assert_eq!(manifest(&part)["done"], false);
    let mpath = format!("{p}.manifest.json");
    let mut steps = 0;
    while manifest(&part)["done"] != true {
        let v = &jsonl(&["search", "--resume", &mpath, "--stop-after", "100"])[0];
        assert!(v["records"].as_u64().unwrap() > 0);
        steps += 1;
        assert!(steps < 1000);
    }
    assert!(steps > 1);
    assert_eq!(fs::read(&full).unwrap(), fs::read(&part).unwrap());

    let text = fs::read_to_string(&full).unwrap();
    for l in text.lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert!(v["canonical_form"].is_array());
    }
}

#[test]
fn resume_refuses_foreign_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("x.json");
    fs::write(&bad, "{}").unwrap();
    usage_error(&["search", "--resume", bad.to_str().unwrap()]);
    let m = dir.path().join("r.jsonl.manifest.json");
    usage_error(&["search", "--resume", m.to_str().unwrap()]);
    fs::write(&m, "{\"tool_version\":\"0.0.0-other\"}").unwrap();
    usage_error(&["search", "--resume", m.to_str().unwrap()]);
}

#[test]
fn killed_search_resumes_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    let part = dir.path().join("part.jsonl");
    let args = ["search", "--group", "Z18", "--zero-free", "--claims", "CONJECTURE"];

    let mut a = args.to_vec();
    let f = full.to_str().unwrap().to_string();
    a.extend(["--out", &f]);
    ok(&a);

    let mut a = args.to_vec();
    let p = part.to_str().unwrap().to_string();
    a.extend(["--out", &p]);
    let mut child = bin().args(&a).stdout(Stdio::null()).stderr(Stdio::null()).spawn().unwrap();
    let mpath = format!("{p}.manifest.json");
    let start = Instant::now();
    loop {
        let written = fs::metadata(&part).map(|m| m.len()).unwrap_or(0);
        if written > 0 && Path::new(&mpath).exists() {
            break;
        }
        assert!(start.elapsed() < Duration::from_secs(60), "search never started writing");
        sleep(Duration::from_millis(1));
    }
    child.kill().unwrap();
    child.wait().unwrap();
    let m = manifest(&part);
    assert_eq!(m["done"], false, "search finished before it could be killed");
    let full_bytes = fs::read(&full).unwrap();
    assert!((fs::metadata(&part).unwrap().len() as usize) < full_bytes.len());

    let out = run(&["search", "--resume", &mpath]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fs::read(&part).unwrap() == full_bytes, "resumed output differs");
}

#[test]
fn fuzz_exhausts_small_groups() {
    let v = &jsonl(&["--max-order", "9", "fuzz"])[0];
    assert_eq!(v["verdict"], "exhausted");
    assert_eq!(v["groups"], 13);
    assert!(v["min_slack"].is_string());
    let v = &jsonl(&["fuzz", "--group", "Z7", "--group", "Z8", "--generating"])[0];
    assert_eq!(v["verdict"], "exhausted");
    assert_eq!(v["groups"], 2);
    let text = ok(&["fuzz", "--group", "Z7"]);
    assert!(text.starts_with("exhausted: 1 groups"), "{text}");
}

#[test]
fn report_suites_stream_progress_to_stderr() {
    let out = run(&["--json", "report", "--suite", "cr"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("running cr"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["notes"][2], "cr(Z7) = 4");
    for (suite, order) in [("extremal", None), ("main", Some("8")), ("symmetric", Some("9")), ("periodic", Some("8")), ("kwedge", Some("6")), ("hp", Some("8")), ("oracle", Some("12")), ("conjecture", Some("7"))] {
        let mut args = vec![];
        if let Some(n) = order {
            args.extend(["--max-order", n]);
        }
        args.extend(["report", "--suite", suite]);
        let v = jsonl(&args);
        assert_eq!(v.len(), 1, "{suite}");
        let text = ok(&args);
        assert!(!text.contains("VIOLATIONS") && !text.contains("COUNTEREXAMPLE"), "{suite}: {text}");
    }
    let v = &jsonl(&["--max-order", "12", "report", "--suite", "oracle", "--seed", "7"])[0];
    assert_eq!(v["tallies"].as_object().unwrap().values().map(|t| t["violations"].as_u64().unwrap()).sum::<u64>(), 0);
}

#[test]
fn output_is_deterministic_across_runs_and_threads() {
    let cmds: &[&[&str]] = &[
        &["--json", "search", "--group", "Z12", "--zero-free", "--claims", "CONJECTURE,MAIN_T2"],
        &["search", "--group", "Z2xZ6", "--symmetric", "--claims", "SYM_T4,PERIODIC_T5"],
        &["--json", "--max-order", "10", "report", "--suite", "main"],
        &["--json", "--max-order", "10", "fuzz"],
        &["hp-rep", "--group", "Z16", "--set", "1,5"],
    ];
    for c in cmds {
        let a = ok(c);
        let b = ok(c);
        assert_eq!(a, b, "{c:?}");
        for t in ["1", "3"] {
            let mut args = vec!["--threads", t];
            args.extend_from_slice(c);
            assert_eq!(ok(&args), a, "{c:?} with {t} threads");
        }
    }
}

#[test]
fn file_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outs = vec![];
    for (i, t) in ["1", "4"].iter().enumerate() {
        let p = dir.path().join(format!("r{i}.jsonl"));
        ok(&["--threads", t, "search", "--group", "Z12", "--asymmetric", "--claims", "MAIN_T2", "--out", p.to_str().unwrap()]);
        outs.push(fs::read(&p).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
}
