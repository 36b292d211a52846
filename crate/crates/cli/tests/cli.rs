use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_besselcm"))
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn zeta_pick_is_expected_fail() {
    let (code, out) = run(&[
        "verify",
        "idtests",
        "--only",
        "zeta-pick",
        "--format",
        "csv",
        "--stable",
    ]);
    assert_eq!(code, 0, "{out}");
    let row = out.lines().find(|l| l.contains("zeta-pick")).unwrap();
    assert!(row.contains("expected-fail"), "{row}");
}

#[test]
fn stable_json_is_deterministic() {
    let args = [
        "verify",
        "distributions",
        "--only",
        "gig-*",
        "--stable",
        "--threads",
        "1",
    ];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(!v["rows"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify", "nothing"]).0, 2);
    assert_eq!(run(&["eval", "bessel_j", "nu=1"]).0, 2);
}

#[test]
fn eval_prints_value() {
    let (code, out) = run(&["eval", "bessel_zero", "nu=0", "n=1"]);
    assert_eq!(code, 0);
    assert!(out.contains("2.40482555769577"), "{out}");
}
