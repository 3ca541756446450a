use std::process::{Command, Output};

use spinab::verify::{Report, Status};

fn spinab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(spinab(&["nonsense"]).status.code(), Some(2));
    assert_eq!(spinab(&["verify", "no-such-id"]).status.code(), Some(2));
    assert_eq!(spinab(&["weyl", "spin.F99"]).status.code(), Some(2));
    assert_eq!(spinab(&["enumerate-codes", "--n", "40"]).status.code(), Some(2));
    assert_eq!(spinab(&["root", "E9"]).status.code(), Some(2));
    assert_eq!(spinab(&["--threads", "0", "list"]).status.code(), Some(2));
}

#[test]
fn verify_json_schema() {
    let o = spinab(&["verify", "g2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in v["checks"].as_array().unwrap() {
        for key in ["prop", "check", "expected", "computed", "status", "millis"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    assert_eq!(serde_json::from_str::<Report>(&r.to_json()).unwrap(), r);
}

#[test]
fn metadata_and_intervals_do_not_fail() {
    let o = spinab(&["verify", "d4-catalog", "--format", "json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.checks.iter().any(|c| c.status == Status::Metadata && c.check.contains("conjugate-to")));
    let f20 = r.checks.iter().find(|c| c.check == "d4.F20 weyl-either").unwrap();
    assert_eq!(f20.status, Status::BoundInterval);
    assert!(f20.computed.contains("flagged"));
}

#[test]
fn commands() {
    let o = spinab(&["enumerate-codes", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n = 7, all-ones = false: 1 classes"));
    let o = spinab(&["weyl", "spin.F7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lower"], "1344");
    assert_eq!(v["upper"], "1344");
    let o = spinab(&["centralizer", "spin.K"]);
    assert_eq!(stdout(&o), "spin.K: fixed subalgebra dimension 6\n");
    let o = spinab(&["centralizer", "family.26"]);
    assert!(stdout(&o).ends_with("dimension 0\n"));
    let o = spinab(&["root", "F4", "--coweight", "0,0,2,1", "--denominator", "3"]);
    assert!(stdout(&o).trim_end().ends_with("A2L+A2S"));
    let o = spinab(&["list"]);
    assert!(stdout(&o).contains("halfspin.F3"));
}

#[test]
fn reports_are_byte_identical() {
    let a = spinab(&["--threads", "1", "report", "--format", "json", "--no-timing"]);
    let b = spinab(&["--threads", "3", "report", "--format", "json", "--no-timing"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let t1 = spinab(&["verify", "levi", "--no-timing"]);
    let t2 = spinab(&["--threads", "2", "verify", "levi", "--no-timing"]);
    assert_eq!(t1.stdout, t2.stdout);
}
