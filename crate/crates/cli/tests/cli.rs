use std::process::{Command, Output};

fn refdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_refdyn")).args(args).output().expect("run refdyn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn general_reports_tuple() {
    let o = refdyn(&["reproduce", "general", "--n", "3", "--horizon", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(1, 8, 8, 8, 1)"));
}

#[test]
fn output_is_deterministic() {
    let args = ["billiard", "build", "--seed", "7"];
    let (a, b) = (refdyn(&args), refdyn(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"seed\": 7"));
}

#[test]
fn elliptic_even_certificate() {
    let o = refdyn(&["elliptic", "check", "--n", "4", "--horizon", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("\"coeffs_after_sigma1\""));
}

#[test]
fn growth_as_csv() {
    let o = refdyn(&["--format", "csv", "transition", "growth", "--system", "triangle", "--steps", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("step,phase,v0,v1,v2,v3,v4,v5,ratio"));
    assert_eq!(lines.nth(3), Some("3,0,3,2,2,0,1,1,3.000000000"));
}

#[test]
fn matrix_file_input() {
    let dir = std::env::temp_dir().join(format!("refdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fib.json");
    std::fs::write(&path, r#"{"period": 1, "matrices": [[[1, 1], [1, 0]]]}"#).unwrap();
    let o = refdyn(&["--format", "csv", "transition", "growth", "--matrix-file", path.to_str().unwrap(), "--steps", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().any(|l| l.starts_with("6,0,13,8,")));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(refdyn(&["reproduce", "general"]).status.code(), Some(2));
    assert_eq!(refdyn(&["transition", "growth", "--system", "nope"]).status.code(), Some(2));
    assert_eq!(refdyn(&["billiard", "check", "--seed-range", "5..5"]).status.code(), Some(2));
    assert_eq!(refdyn(&["billiard", "orbit", "--word", "pqx"]).status.code(), Some(2));
    assert_eq!(refdyn(&["elliptic", "check", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("refdyn-out-{}.json", std::process::id()));
    let o = refdyn(&["--out", path.to_str().unwrap(), "reproduce", "conic-line"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"command\": \"reproduce conic-line\""));
    let _ = std::fs::remove_file(path);
}
