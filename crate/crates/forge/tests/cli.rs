use std::process::{Command, Output};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redei-forge"))
        .args(args)
        .env_remove("REDEI_FORGE_MAX_P")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expressible_json() {
    let o = forge(&["expressible", "--p", "7", "--alpha", "2", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rec = &v[0];
    assert_eq!(rec["details"]["expressible"], serde_json::json!([1, 3, 4, 6]));
    assert_eq!(rec["details"]["D"], serde_json::json!([2, 5]));
    assert_eq!(rec["claimed"], 4);
    assert_eq!(rec["passed"], true);
}

#[test]
fn two_squares_csv() {
    let o = forge(&["two-squares", "--p", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "theorem,p,params,claimed,observed,passed,witness,elapsed_ms\ntwo_squares,5,,5,5,true,\"(1,2)\",\n"
    );
}

#[test]
fn usage_errors_exit_one() {
    let o = forge(&["expressible", "--p", "8", "--alpha", "2", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not prime"));
    assert_eq!(forge(&["expressible", "--p", "7"]).status.code(), Some(1));
    assert_eq!(forge(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(forge(&["directions", "--p", "7", "--points", "0:0,1:1,2:2"]).status.code(), Some(1));
    assert_eq!(forge(&["sweep", "--theorem", "main", "--lo", "24", "--hi", "28"]).status.code(), Some(1));
    assert_eq!(forge(&["--help"]).status.code(), Some(0));
}

#[test]
fn violations_exit_two() {
    let o = forge(&["pairs", "--p", "5", "--k", "2", "--g", "2", "--target", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["passed"], false);
    let o = forge(&["corollary", "--p", "13", "--d", "12"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn single_checks_pass() {
    for args in [
        &["solve-thue", "--p", "101", "--a", "37"][..],
        &["solve-vinogradov", "--p", "101", "--a", "37", "--alpha", "5"],
        &["redei-audit", "--p", "13", "--alpha", "3", "--beta", "2"],
        &["pairs", "--p", "13", "--k", "4", "--g", "3"],
        &["directions", "--p", "5", "--points", "0:0,1:1,0:1"],
        &["directions", "--p", "7", "--points", "0:0,1:3,2:1,5:5", "--alpha", "3"],
        &["hp-check", "--p", "13", "--d", "4", "--set", "0,1"],
        &["corollary", "--p", "13", "--d", "4"],
        &["remark2", "--p", "23", "--alpha", "3"],
    ] {
        let o = forge(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn bivariate_guard_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_redei-forge"))
        .args(["redei-audit", "--p", "13", "--alpha", "1", "--beta", "2"])
        .env("REDEI_FORGE_MAX_P", "11")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_redei-forge"))
        .args(["redei-audit", "--p", "13", "--alpha", "1", "--beta", "2"])
        .env("REDEI_FORGE_MAX_P", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn report_file_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let p = path.to_str().unwrap();
    let o = forge(&["sweep", "--theorem", "remark2", "--hi", "60", "--format", "csv", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("theorem,p,params,claimed,observed,passed,witness,elapsed_ms\n"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("remark2,")));

    let missing = dir.path().join("no/such/dir/r.json");
    let o = forge(&["two-squares", "--p", "13", "--out", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sweep_reports_are_byte_identical_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["json", "csv"] {
        let mut reports = Vec::new();
        for workers in ["1", "8"] {
            let path = dir.path().join(format!("{workers}.{format}"));
            let o = forge(&[
                "sweep", "--theorem", "directions", "--lo", "5", "--hi", "17", "--samples", "30", "--seed", "11",
                "--workers", workers, "--format", format, "--out", path.to_str().unwrap(),
            ]);
            assert_eq!(o.status.code(), Some(0));
            reports.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(reports[0], reports[1]);
    }
}
