//! End-to-end tests of the `triq` binary: output contracts and exit
//! codes (0 success, 1 invalid input, 2 numerical/verification failure).

use std::process::{Command, Output};

fn triq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn table_csv_rows_are_exact() {
    let out = triq(&["table", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("state,ab_symmetry,ab_concurrence"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(
        rows,
        vec![
            "GHZ,S,0.0,F,S,0.0,F,S,0.0,F,1.0",
            "GFR,NS,0.0,F,NS,0.0,F,AS,1.0,R,0.0",
            "WRr,NS,0.666666666667,R,NS,0.666666666667,R,S,0.333333333333,r,0.0",
            "WRR,S,0.666666666667,R,S,0.666666666667,R,S,0.666666666667,R,0.0",
        ]
    );
}

#[test]
fn table_text_cells_round_trip_to_csv_values() {
    let text = stdout(&triq(&["table"]));
    let csv = stdout(&triq(&["table", "--format", "csv"]));
    // Every numeric token in the text table must appear in the CSV.
    let csv_values: Vec<&str> = csv
        .lines()
        .skip(1)
        .flat_map(|l| l.split(','))
        .filter(|cell| cell.parse::<f64>().is_ok())
        .collect();
    for token in text
        .split_whitespace()
        .filter(|t| t.parse::<f64>().is_ok())
    {
        assert!(
            csv_values.contains(&token),
            "text token {token} missing from CSV"
        );
    }
}

#[test]
fn table_expanded_lists_all_eight() {
    let out = triq(&["table", "--expanded", "--format", "json"]);
    let docs = json(&out);
    let names: Vec<&str> = docs
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["state"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        vec!["GHZ+", "GHZ-", "GFR+", "GFR-", "WRR+", "WRR-", "WRr+", "WRr-"]
    );
}

#[test]
fn analyze_named_ghz() {
    let out = triq(&["analyze", "--state", "GHZ+", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["tangle"]["paper"].as_f64().unwrap(), 1.0);
    for pair in ["AB", "AC", "BC"] {
        assert_eq!(doc["pairs"][pair]["concurrence"].as_f64().unwrap(), 0.0);
        assert_eq!(doc["pairs"][pair]["robustness"], "F");
    }
    assert_eq!(doc["hamiltonian_eigenvalue"].as_f64().unwrap(), 2.5);
    assert!(doc["lewenstein"].is_null());
}

#[test]
fn analyze_inline_product_state() {
    let out = triq(&[
        "analyze",
        "--amplitudes",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "1,0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["tangle"]["ckw"].as_f64().unwrap(), 0.0);
    for pair in ["AB", "AC", "BC"] {
        assert_eq!(doc["pairs"][pair]["concurrence"].as_f64().unwrap(), 0.0);
        assert!(doc["pairs"][pair]["ppt_min_eigenvalue"].as_f64().unwrap() >= 0.0);
    }
    // |111> identifies itself through amplitudes, not a name.
    assert!(doc["state"]["amplitudes"].is_array());
}

#[test]
fn analyze_wrr_small_q2_conditionals() {
    let out = triq(&["analyze", "--state", "WRr+", "--q", "2", "--format", "json"]);
    let doc = json(&out);
    let cond = &doc["tsallis"][0]["conditional"];
    // The AB marginal has spectrum (5/6, 1/6), so S2(ABC|AB) = -5/13;
    // conditioning on BC (spectrum (2/3, 1/3)) gives -4/5.
    let minus_five_thirteenths = -5.0 / 13.0;
    assert!((cond["ABC|AB"].as_f64().unwrap() - minus_five_thirteenths).abs() < 1e-9);
    assert!((cond["ABC|BC"].as_f64().unwrap() + 0.8).abs() < 1e-9);
    assert_eq!(doc["tsallis"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_file_input_with_comments() {
    let path = std::env::temp_dir().join(format!("triq-cli-test-{}.amp", std::process::id()));
    std::fs::write(
        &path,
        "# GHZ+ amplitudes\n0.7071067811865476,0 0,0 0,0 0,0\n0,0 0,0 0,0 0.7071067811865476,0\n",
    )
    .unwrap();
    let out = triq(&["analyze", "--file", path.to_str().unwrap(), "--format", "json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["tangle"]["paper"].as_f64().unwrap(), 1.0);
}

#[test]
fn analyze_rejects_bad_inputs() {
    // Unknown name.
    let out = triq(&["analyze", "--state", "XYZ+"]);
    assert_eq!(out.status.code(), Some(1));

    // Malformed amplitude token.
    let out = triq(&["analyze", "--amplitudes", "1", "0,0", "0,0", "0,0", "0,0", "0,0", "0,0", "0,0"]);
    assert_eq!(out.status.code(), Some(1));

    // Zero vector.
    let out = triq(&[
        "analyze",
        "--amplitudes",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Norm off by more than 1e-6.
    let out = triq(&[
        "analyze",
        "--amplitudes",
        "1.001,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Conflicting selectors.
    let out = triq(&["analyze", "--state", "GHZ+", "--file", "nope.amp"]);
    assert_eq!(out.status.code(), Some(1));

    // Missing selector.
    let out = triq(&["analyze"]);
    assert_eq!(out.status.code(), Some(1));

    // Non-positive q.
    let out = triq(&["analyze", "--state", "GHZ+", "--q", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_renormalizes_with_warning() {
    // Norm deviation between 1e-9 and 1e-6: accepted, warned, renormalized.
    let out = triq(&[
        "analyze",
        "--amplitudes",
        "1.00000001,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "0,0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(stderr.contains("renormalizing"), "stderr: {stderr}");
    let doc = json(&out);
    assert_eq!(doc["state"]["amplitudes"][0][0].as_f64().unwrap(), 1.0);
}

#[test]
fn sweep_q_ghz_at_one() {
    let out = triq(&[
        "sweep-q",
        "--state",
        "GHZ+",
        "--q-min",
        "1",
        "--q-max",
        "1",
        "--steps",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
    let ln2 = std::f64::consts::LN_2;
    assert!((cells[0] - 1.0).abs() < 1e-12);
    for value in &cells[1..] {
        assert!((value + ln2).abs() < 1e-9, "conditional {value}");
    }
}

#[test]
fn sweep_q_covers_grid_and_rejects_bad_ranges() {
    let out = triq(&[
        "sweep-q", "--state", "WRR+", "--q-min", "0.5", "--q-max", "3", "--steps", "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 7); // header + 6 rows

    for bad in [
        vec!["sweep-q", "--state", "WRR+", "--q-min", "0", "--q-max", "1", "--steps", "3"],
        vec!["sweep-q", "--state", "WRR+", "--q-min", "2", "--q-max", "1", "--steps", "3"],
        vec!["sweep-q", "--state", "WRR+", "--q-min", "1", "--q-max", "2", "--steps", "0"],
    ] {
        assert_eq!(triq(&bad).status.code(), Some(1));
    }
}

#[test]
fn hamiltonian_formats() {
    let out = triq(&["hamiltonian", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let state_rows = text.lines().filter(|l| l.starts_with("state,")).count();
    let mult_rows = text.lines().filter(|l| l.starts_with("multiplicity,")).count();
    assert_eq!(state_rows, 8);
    assert_eq!(mult_rows, 3);

    let out = triq(&["hamiltonian", "--format", "json"]);
    let doc = json(&out);
    assert_eq!(doc["states"].as_array().unwrap().len(), 8);
    let mult: Vec<u64> = doc["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["multiplicity"].as_u64().unwrap())
        .collect();
    assert_eq!(mult, vec![4, 2, 2]);
}

#[test]
fn fuzz_contract() {
    let out = triq(&["fuzz", "--count", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "pass: 50, fail: 0\n");

    let again = triq(&["fuzz", "--count", "50", "--seed", "7"]);
    assert_eq!(out.stdout, again.stdout);

    let out = triq(&["fuzz", "--count", "0", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(1));

    let out = triq(&["fuzz", "--count", "20", "--seed", "9", "--format", "json"]);
    let doc = json(&out);
    assert_eq!(doc["pass"].as_u64().unwrap(), 20);
    assert_eq!(doc["fail"].as_u64().unwrap(), 0);
    assert_eq!(doc["checks"]["ppt_concurrence_agreement"].as_u64().unwrap(), 60);
}

#[test]
fn help_exits_zero_and_bad_flags_exit_one() {
    assert_eq!(triq(&["--help"]).status.code(), Some(0));
    assert_eq!(triq(&["table", "--format", "yaml"]).status.code(), Some(1));
    assert_eq!(triq(&["nonsense"]).status.code(), Some(1));
}
