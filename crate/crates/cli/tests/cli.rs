//! End-to-end tests of the `sattrack` binary: pipeline wiring, output
//! files, idempotency, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn sattrack(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sattrack"))
        .current_dir(dir)
        .env_remove("SATTRACK_OUT_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("config.toml");
    std::fs::write(
        &path,
        "[mount]\n\
         v_max_az_deg_s = 10.0\n\
         v_max_el_deg_s = 10.0\n\
         accel_az_deg_s2 = 20.0\n\
         accel_el_deg_s2 = 20.0\n\
         latency_s = 0.1\n\
         command_interval_s = 1.0\n\
         sim_step_s = 0.005\n\
         \n\
         [antenna]\n\
         gain_dbi = 46.0\n\
         efficiency = 0.7\n\
         frequency_ghz = 130.0\n\
         hpbw_deg = 1.0\n",
    )
    .unwrap();
    path
}

#[test]
fn full_pipeline_produces_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_config(d);

    let out = sattrack(
        d,
        &[
            "gen-pass", "--peak-el", "47", "--altitude-km", "420", "--step-s", "1",
            "--min-el", "30", "--out", "pass.csv",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("pass duration"), "{stdout}");
    assert!(stdout.contains("max axis rates"), "{stdout}");

    let out = sattrack(
        d,
        &[
            "simulate", "--traj", "pass.csv", "--config", "config.toml",
            "--profile", "A", "--out", "run",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(d.join("run/trace.csv").exists());
    let summary = std::fs::read_to_string(d.join("run/summary.txt")).unwrap();
    assert!(summary.starts_with("samples = "));
    // This pass is trackable by profile A, so the error stays small.
    let max_error: f64 = summary
        .lines()
        .find_map(|l| l.strip_prefix("max_error_deg = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(max_error < 1.0, "profile A max error {max_error} deg");

    let out = sattrack(
        d,
        &[
            "analyze", "--trace", "run/trace.csv", "--antenna", "config.toml",
            "--ecdf", "--loss", "--roc", "--out", "run",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["run/ecdf.csv", "run/loss.csv", "run/roc.csv"] {
        assert!(d.join(name).exists(), "{name} missing");
    }
    let ecdf = std::fs::read_to_string(d.join("run/ecdf.csv")).unwrap();
    let last = ecdf.lines().last().unwrap();
    assert!(last.ends_with("1.000000000"), "final F must be 1.0, got {last}");
}

#[test]
fn simulate_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_config(d);
    sattrack(
        d,
        &[
            "gen-pass", "--peak-el", "60", "--altitude-km", "420", "--step-s", "1",
            "--min-el", "40", "--out", "pass.csv",
        ],
    );
    let run = |out: &str| {
        let o = sattrack(
            d,
            &[
                "simulate", "--traj", "pass.csv", "--config", "config.toml",
                "--profile", "2.0,1.0", "--out", out,
            ],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    };
    run("r1");
    run("r2");
    run("r1"); // overwrite in place
    let t1 = std::fs::read(d.join("r1/trace.csv")).unwrap();
    let t2 = std::fs::read(d.join("r2/trace.csv")).unwrap();
    assert_eq!(t1, t2, "reruns must be byte-identical");
    let s1 = std::fs::read(d.join("r1/summary.txt")).unwrap();
    let s2 = std::fs::read(d.join("r2/summary.txt")).unwrap();
    assert_eq!(s1, s2);
}

#[test]
fn profile_c_writes_optimizer_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_config(d);
    // Short, gentle pass keeps the optimization quick.
    sattrack(
        d,
        &[
            "gen-pass", "--peak-el", "47", "--altitude-km", "420", "--step-s", "1",
            "--min-el", "42", "--out", "pass.csv",
        ],
    );
    let out = sattrack(
        d,
        &[
            "simulate", "--traj", "pass.csv", "--config", "config.toml",
            "--profile", "C", "--out", "run",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = std::fs::read_to_string(d.join("run/optimizer_report.txt")).unwrap();
    for key in ["v_az = ", "v_el = ", "rmse_deg = ", "iterations = ", "evaluations = "] {
        assert!(report.contains(key), "report missing {key:?}:\n{report}");
    }
    let history = std::fs::read_to_string(d.join("run/optimizer_history.csv")).unwrap();
    assert!(history.starts_with("iter,v_az,v_el,rmse_deg,accepted\n"));
    assert!(history.lines().count() > 2);
}

#[test]
fn clamped_custom_profile_warns() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_config(d);
    sattrack(
        d,
        &[
            "gen-pass", "--peak-el", "47", "--altitude-km", "420", "--step-s", "1",
            "--min-el", "40", "--out", "pass.csv",
        ],
    );
    let out = sattrack(
        d,
        &[
            "simulate", "--traj", "pass.csv", "--config", "config.toml",
            "--profile", "25.0,1.0", "--out", "run",
        ],
    );
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("clamped"), "expected clamp warning, got: {stderr}");
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_config(d);

    // 2: usage error (unknown flag).
    let out = sattrack(d, &["simulate", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: input validation (missing trajectory file), message names the path.
    let out = sattrack(
        d,
        &["simulate", "--traj", "nope.csv", "--profile", "A", "--out", "run"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope.csv"));

    // 3: missing config file, message names the path.
    sattrack(
        d,
        &[
            "gen-pass", "--peak-el", "47", "--altitude-km", "420", "--step-s", "1",
            "--min-el", "40", "--out", "pass.csv",
        ],
    );
    let out = sattrack(
        d,
        &[
            "simulate", "--traj", "pass.csv", "--config", "absent.toml",
            "--profile", "A", "--out", "run",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("absent.toml"));

    // 3: invalid geometry.
    let out = sattrack(
        d,
        &[
            "gen-pass", "--peak-el", "95", "--altitude-km", "420", "--step-s", "1",
            "--min-el", "10", "--out", "x.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(3));

    // 3: ROC window longer than the trace.
    sattrack(
        d,
        &[
            "simulate", "--traj", "pass.csv", "--config", "config.toml",
            "--profile", "A", "--out", "run",
        ],
    );
    let out = sattrack(
        d,
        &[
            "analyze", "--trace", "run/trace.csv", "--antenna", "config.toml",
            "--roc", "--window-s", "100000", "--out", "run",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_dir_env_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_config(d);
    sattrack(
        d,
        &[
            "gen-pass", "--peak-el", "47", "--altitude-km", "420", "--step-s", "1",
            "--min-el", "40", "--out", "pass.csv",
        ],
    );
    let out = Command::new(env!("CARGO_BIN_EXE_sattrack"))
        .current_dir(d)
        .env("SATTRACK_OUT_DIR", d.join("envout"))
        .args([
            "simulate", "--traj", "pass.csv", "--config", "config.toml",
            "--profile", "A",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(d.join("envout/trace.csv").exists());
}
