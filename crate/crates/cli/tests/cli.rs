use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn qcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn doc(text: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const CHAIN: &str = r#"{"kind": "poset", "leq": [[1,1],[0,1]]}"#;

#[test]
fn flagship_report_in_both_formats() {
    let f = doc(CHAIN);
    let path = f.path().to_str().unwrap();
    let base = ["verify", "--suite", "representability", "--grid", "2", "--exact-grid", "--instance", path];
    let table = qcat(&base);
    assert_eq!(table.status.code(), Some(0), "{}", stderr(&table));
    let t = stdout(&table);
    assert!(t.contains("functionals scanned: 729"), "{t}");
    assert!(t.contains("representables found: 3"));
    assert!(t.ends_with("status: PASS\n"));

    let json = qcat(&[&base[..], &["--report", "json"]].concat());
    let j: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(j["metrics"]["functionals scanned"], 729);
    assert_eq!(j["status"], "pass");
    assert_eq!(j["checked"].as_u64().unwrap().to_string(), t.split("checked: ").nth(1).unwrap().split_whitespace().next().unwrap());
    assert_eq!(j["failures"].as_array().unwrap().len(), 0);
    assert!(j.get("timing_ms").is_none());
}

#[test]
fn timing_is_opt_in() {
    let plain = qcat(&["verify", "--suite", "monad-laws", "--max-size", "2"]);
    assert!(!stdout(&plain).contains("timing"));
    let timed = qcat(&["verify", "--suite", "monad-laws", "--max-size", "2", "--timing"]);
    assert!(stdout(&timed).contains("timing: "));
}

#[test]
fn input_errors_exit_3() {
    let cases: [&[&str]; 5] = [
        &["verify", "--suite", "foo"],
        &["verify", "--suite", "monad-laws", "--tnorm", "bogus"],
        &["verify", "--suite", "tensor-maximality", "--max-size", "9"],
        &["verify", "--suite", "representability", "--tnorm", "product"],
        &["verify", "--suite", "monad-laws", "--report", "xml"],
    ];
    for args in cases {
        let o = qcat(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error: "));
    }
    assert!(stderr(&qcat(&["verify", "--suite", "foo"])).contains("unknown suite `foo`"));
    assert_eq!(qcat(&["verify"]).status.code(), Some(3));
    assert_eq!(qcat(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_reports_distinct_error_codes() {
    let cases = [
        (r#"{"kind": "vcategory", "hom": [["1", "3/0"], ["0", "1"]]}"#, "malformed-rational"),
        (r#"{"kind": "vcategory", "hom": [["1", "5/4"], ["0", "1"]]}"#, "out-of-range"),
        (r#"{"kind": "poset", "leq": [[1,1],[1,1]]}"#, "not-poset"),
        (r#"{"kind": "poset", "tensor": "product", "grid": 2, "leq": [[1]]}"#, "grid-not-closed"),
        (r#"{"kind": "poset", "leq": [[1]"#, "syntax"),
    ];
    for (text, code) in cases {
        let f = doc(text);
        let o = qcat(&["check", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(3));
        assert!(stderr(&o).contains(&format!("error[{code}]")), "{text}: {}", stderr(&o));
    }
}

#[test]
fn check_runs_kind_specific_audits() {
    let docs = [
        CHAIN,
        r#"{"kind": "vcategory", "hom": [["1", "1/2"], ["1/2", "1"]]}"#,
        r#"{"kind": "generators", "leq": [[1,1],[0,1]], "functions": [["1","0"],["1","1"]]}"#,
    ];
    for text in docs {
        let f = doc(text);
        let o = qcat(&["check", f.path().to_str().unwrap(), "--report", "json"]);
        assert_eq!(o.status.code(), Some(0), "{text}: {}", stdout(&o));
        let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(j["suite"].as_str().unwrap().starts_with("check "));
    }
}

#[test]
fn rerun_is_byte_identical() {
    let args = ["verify", "--suite", "functoriality", "--max-size", "3", "--seed", "11", "--corpus", "50", "--report", "json"];
    assert_eq!(qcat(&args).stdout, qcat(&args).stdout);
}
