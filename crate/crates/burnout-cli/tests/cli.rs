//! End-to-end checks of the `burnout` binary.

use std::process::Command;

fn burnout() -> Command {
    Command::new(env!("CARGO_BIN_EXE_burnout"))
}

#[test]
fn verify_quick_exits_zero() {
    let out = burnout()
        .args(["verify", "--quick", "--seed", "5"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        text.lines().filter(|l| l.contains("[pass]")).count(),
        10,
        "{text}"
    );
}

#[test]
fn moments_small_table_values() {
    let out = burnout().args(["moments", "--n", "0..2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config="));
    assert_eq!(
        lines.next().unwrap(),
        "n,mean,variance,a_n,a_n_minus_loglog"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let mean: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!((mean[0] - 1.0).abs() < 1e-12);
    assert!((mean[1] - 2.0).abs() < 1e-12);
    assert!((mean[2] - 8.0 / 3.0).abs() < 1e-12);
}

#[test]
fn same_seed_is_byte_identical() {
    let run = || {
        burnout()
            .args([
                "simulate",
                "tau",
                "--site",
                "1",
                "--samples",
                "500",
                "--seed",
                "99",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_config_is_machine_readable() {
    let out = burnout()
        .args(["simulate", "tau", "--no-such-flag"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is a JSON object");
    assert_eq!(err["error"]["kind"], "config");
}

#[test]
fn runtime_error_is_machine_readable() {
    let out = burnout()
        .args([
            "simulate",
            "fire",
            "--graph",
            "path:3",
            "--target",
            "9",
            "--horizon",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is a JSON object");
    assert_eq!(err["error"]["kind"], "runtime");
}
