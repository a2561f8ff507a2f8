use std::process::{Command, Output};

use serde_json::Value;

fn fracpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracpart"))
        .args(args)
        .output()
        .expect("spawn fracpart")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn bnk_exact_rows() {
    let out = fracpart(&["bnk", "--n", "3", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,k,b\n3,1,1\n3,2,1/2\n3,3,1/3\n");
    let out = fracpart(&["bnk", "--n", "1", "--mode", "exact"]);
    assert_eq!(stdout(&out), "n,k,b\n1,1,1\n");
}

#[test]
fn bnk_float_against_exact() {
    let exact = fracpart(&[
        "bnk", "--n", "30", "--from", "1", "--mode", "exact", "--format", "json",
    ]);
    let float = fracpart(&[
        "bnk", "--n", "30", "--from", "1", "--mode", "float", "--format", "json",
    ]);
    let exact: Value = serde_json::from_slice(&exact.stdout).unwrap();
    let float: Value = serde_json::from_slice(&float.stdout).unwrap();
    let (er, fr) = (
        exact["rows"].as_array().unwrap(),
        float["rows"].as_array().unwrap(),
    );
    assert_eq!(er.len(), 465);
    for (e, f) in er.iter().zip(fr) {
        let text = e["b"].as_str().unwrap();
        let (num, den) = text.split_once('/').unwrap_or((text, "1"));
        let e: f64 = num.parse::<f64>().unwrap() / den.parse::<f64>().unwrap();
        let f = f["b"].as_f64().unwrap();
        assert!(((f - e) / e).abs() <= 1e-12, "{text} vs {f}");
    }
    assert_eq!(
        fracpart(&["bnk", "--n", "30", "--compare"]).status.code(),
        Some(0)
    );
}

#[test]
fn ratio_window_reproduces_table() {
    let table = [
        0.5611411658,
        0.5611411846,
        0.5611412033,
        0.5611412220,
        0.5611412407,
        0.5611412594,
        0.5611412781,
        0.5611412968,
        0.5611413156,
        0.5611413344,
        0.5611413530,
    ];
    let out = fracpart(&[
        "ratio",
        "--to",
        "15000",
        "--window",
        "11",
        "--precision",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<(usize, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (n, v) = l.split_once(',').unwrap();
            (n.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 11);
    for (i, (n, v)) in rows.iter().enumerate() {
        assert_eq!(*n, 14990 + i);
        assert!((v - table[i]).abs() <= 1e-8);
    }
}

#[test]
fn identities_report() {
    let out = fracpart(&["identities", "--scheme", "cycle", "--to", "40"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS,c(n)=1 for n ≤ 40"));
    let out = fracpart(&["identities", "--scheme", "bell", "--to", "25"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn oracle_edges() {
    let out = fracpart(&["oracle", "--to", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("status,check,detail\nPASS,"));
    assert_eq!(fracpart(&["oracle", "--to", "20"]).status.code(), Some(0));
    assert_eq!(
        fracpart(&["oracle", "--to", "20", "--mode", "float"])
            .status
            .code(),
        Some(0)
    );
    let capped = fracpart(&["oracle", "--to", "46"]);
    assert_eq!(capped.status.code(), Some(2));
    let err = String::from_utf8(capped.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn series_verify_passes() {
    for args in [
        &["series-verify", "--n", "60"][..],
        &["series-verify", "--n", "60", "--parallel"],
    ] {
        let out = fracpart(args);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert_eq!(stdout(&out).matches("PASS").count(), 4);
    }
}

#[test]
fn caps_below_request_are_usage_errors() {
    let out = fracpart(&[
        "identities",
        "--scheme",
        "cycle",
        "--to",
        "10",
        "--enumeration-cap",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = fracpart(&["series-verify", "--n", "20", "--exact-cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bnk", "--n", "401", "--mode", "exact"][..],
        &["bnk", "--n", "3", "--format", "bfile"],
        &["fx", "--n", "100", "--resolution", "0.03"],
        &["fx", "--n", "10", "--resolution", "0.01"],
        &["fit", "--to", "1"],
        &["nope"],
        &["ratio"],
        &["bseries", "--to", "x"],
    ] {
        let out = fracpart(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["bseries", "--to", "200", "--mode", "exact"][..],
        &["fx", "--n", "500", "--format", "json"],
        &[
            "ratio",
            "--to",
            "300",
            "--format",
            "bfile",
            "--precision",
            "12",
        ],
        &["mertens", "--to", "100", "--format", "json"],
    ] {
        assert_eq!(fracpart(args).stdout, fracpart(args).stdout, "{args:?}");
    }
}

#[test]
fn bfile_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let p = path.to_str().unwrap();
    let out = fracpart(&[
        "bseries", "--to", "3", "--mode", "exact", "--format", "bfile", "--output", p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "0 1\n1 1\n2 3/2\n3 11/6\n"
    );

    let out = fracpart(&["mertens", "--to", "10", "--format", "bfile"]);
    assert_eq!(
        stdout(&out),
        "1 1\n2 0\n3 -1\n4 -1\n5 -2\n6 -1\n7 -2\n8 -2\n9 -2\n10 -1\n"
    );
}

#[test]
fn json_shape() {
    let out = fracpart(&[
        "fx",
        "--n",
        "2000",
        "--resolution",
        "1/100",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "fx");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[99]["k"], 2000);
    assert!((rows[99]["value"].as_f64().unwrap() - 1.0 / 2000.0).abs() < 1e-15);
    let c = v["integral"].as_f64().unwrap();
    assert!((c - 0.56146).abs() <= 0.01);

    let out = fracpart(&[
        "bseries", "--to", "3", "--mode", "exact", "--format", "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"][3]["b"], "11/6");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "columns", "rows"]);
}

#[test]
fn fit_reports_gaps() {
    let out = fracpart(&["fit", "--to", "1000", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &v["rows"][0];
    assert_eq!(row["n1"], 999);
    assert!(row["ansatz_gap"].as_f64().unwrap() < row["raw_gap"].as_f64().unwrap());
    let out = fracpart(&["fit", "--to", "1000", "--n1", "100", "--n2", "200"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        fracpart(&["fit", "--to", "100", "--n1", "50", "--n2", "50"])
            .status
            .code(),
        Some(2)
    );
}
