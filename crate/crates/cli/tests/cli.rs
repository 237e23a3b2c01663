use std::f64::consts::TAU;
use std::process::{Command, Output};

fn trigdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigdiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn diff_example_reports_schema() {
    let v = json(&trigdiff(&[
        "diff",
        "--example",
        "ex8_1_p2",
        "--delta",
        "0.01",
        "--rule",
        "fixed:6",
    ]));
    for key in ["p", "n", "delta", "delta_i", "rule", "r", "bound"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["p"], 2);
    assert_eq!(v["n"], 6);
    assert!(v["r"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn sobolev_norm_is_computed_for_examples() {
    let v = json(&trigdiff(&[
        "diff",
        "--example",
        "ex8_2",
        "--delta",
        "0.01",
        "--rule",
        "sobolev:1",
    ]));
    let rule = v["rule"].as_str().unwrap();
    let norm: f64 = rule.rsplit(',').next().unwrap().parse().unwrap();
    assert!((norm - 5.1917).abs() < 1e-3, "{rule}");
    assert!(v["r"].as_f64().unwrap() <= v["bound"].as_f64().unwrap() / 5.1917);
}

#[test]
fn noprior_without_kappa_sweeps() {
    let v = json(&trigdiff(&[
        "diff",
        "--example",
        "ex8_2",
        "--delta",
        "0.01",
        "--rule",
        "noprior:0.25",
    ]));
    let runs = v.as_array().unwrap();
    assert_eq!(runs.len(), 5);
    let ns: Vec<u64> = runs.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]), "{ns:?}");
}

#[test]
fn diff_csv_input() {
    let dir = std::env::temp_dir().join(format!("trigdiff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("sin.csv");
    let out = dir.join("phi.csv");
    let n = 1024;
    let mut csv = String::from("t,y\n");
    for i in 0..=n {
        let t = TAU * i as f64 / n as f64;
        csv.push_str(&format!("{t},{}\n", t.sin()));
    }
    std::fs::write(&input, csv).unwrap();
    let v = json(&trigdiff(&[
        "diff",
        "--order",
        "1",
        "--input",
        input.to_str().unwrap(),
        "--initial",
        "0",
        "--rule",
        "band:1,1",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert!(v["r"].is_null());
    let curve = std::fs::read_to_string(&out).unwrap();
    let first = curve.lines().nth(1).unwrap();
    let phi0: f64 = first.split(',').nth(1).unwrap().parse().unwrap();
    assert!((phi0 - 1.0).abs() < 1e-4, "{first}");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn bad_input_fails_cleanly() {
    let out = trigdiff(&["diff", "--example", "ex8_2", "--rule", "fixed:x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = trigdiff(&["diff", "--example", "nope", "--rule", "fixed:3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = trigdiff(&[
        "diff",
        "--example",
        "ex8_2",
        "--order",
        "3",
        "--rule",
        "fixed:3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = trigdiff(&["dump-matrix", "--p", "4", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dump_matrix_is_square() {
    let out = trigdiff(&["dump-matrix", "--p", "3", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.split(',').count() == 9));
}

#[test]
fn table1_csv() {
    let out = trigdiff(&["table1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 31);
    assert!(text.lines().skip(1).all(|l| l.ends_with("true")));
}

#[test]
fn plot_columns() {
    let out = trigdiff(&["plot", "--figure", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap().split(',').count(), 8);
    assert_eq!(text.lines().count(), 2049);
}

#[test]
fn verify_bounds_small() {
    let out = trigdiff(&[
        "verify-bounds",
        "--max-n",
        "10",
        "--decay-max-n",
        "6",
        "--constants-max-n",
        "50",
        "--trials",
        "20",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).starts_with("check,p,n,j,value,bound,pass"));
}
