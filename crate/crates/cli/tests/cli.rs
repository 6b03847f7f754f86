use std::process::{Command, Output};

fn summatoria(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_summatoria"))
        .args(args)
        .env_remove("SUMMATORIA_BLOCK_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn mertens_at_ten() {
    let out = summatoria(&[
        "compute",
        "--function",
        "mu",
        "--N",
        "10",
        "--checkpoints",
        "10",
    ]);
    assert_eq!(stdout(&out), "n,S\n10,-1\n");
    let out = summatoria(&[
        "compute",
        "--function",
        "lambda",
        "--N",
        "100",
        "--checkpoints",
        "10,100",
    ]);
    assert_eq!(stdout(&out), "n,S\n10,0\n100,-2\n");
}

#[test]
fn log2_example_verdict() {
    let out = summatoria(&[
        "verdict",
        "--function",
        "synth:log2",
        "--N",
        "1000000",
        "--checkpoints",
        "geometric(10,2)",
    ]);
    let v = json(&out);
    assert_eq!(v["conditions_met"], true);
    assert!((v["mu0_hat"].as_f64().unwrap() - 0.5).abs() < 1e-3);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "function",
            "N",
            "checkpoints",
            "mu0_hat",
            "mean_rate",
            "asymptotic_form",
            "ks_trace",
            "conditions_met",
            "notes"
        ]
    );
    assert!(v["ks_trace"][0].get("D").is_some());
}

#[test]
fn harmonic_verdict_and_gap() {
    let v = json(&summatoria(&[
        "verdict",
        "--function",
        "harmonic",
        "--N",
        "1000000",
    ]));
    assert_eq!(v["conditions_met"], false);
    assert_eq!(v["asymptotic_form"]["class"], "bounded");
    let g = json(&summatoria(&[
        "verdict",
        "--function",
        "harmonic",
        "--N",
        "1000000",
        "--mode",
        "gap",
        "--checkpoints",
        "1000,10000,100000,1000000",
    ]));
    let last = g["remainders"]
        .as_array()
        .unwrap()
        .last()
        .unwrap()
        .as_f64()
        .unwrap();
    assert!((last - 0.5772156649).abs() < 1e-5);
}

#[test]
fn assertion4_mode() {
    let v = json(&summatoria(&[
        "verdict",
        "--function",
        "mu-over-k",
        "--N",
        "10000000",
        "--mode",
        "assertion4",
        "--checkpoints",
        "geometric(1000,2)",
    ]));
    assert_eq!(v["conditions_met"], true);
    assert_eq!(v["mu0_hat"], 0.0);
    let v = json(&summatoria(&[
        "verdict",
        "--function",
        "one",
        "--N",
        "100000",
        "--mode",
        "assertion4",
    ]));
    assert_eq!(v["conditions_met"], false);
}

#[test]
fn analyze_reports_moments_and_table() {
    let v = json(&summatoria(&[
        "analyze",
        "--function",
        "mu",
        "--N",
        "10",
        "--checkpoints",
        "10",
        "--lag",
        "1",
    ]));
    assert!((v["mean"].as_f64().unwrap() + 0.1).abs() < 1e-15);
    assert!((v["variance"].as_f64().unwrap() - 0.69).abs() < 1e-12);
    let csv = stdout(&summatoria(&[
        "analyze",
        "--function",
        "alternating",
        "--N",
        "10",
        "--checkpoints",
        "10",
        "--lag",
        "1",
        "--format",
        "csv",
    ]));
    assert_eq!(csv, "n,lag,rho\n10,1,-1.0000000000000000e0\n");
}

#[test]
fn synth_outputs() {
    let csv = stdout(&summatoria(&[
        "synth",
        "--function",
        "synth:coin",
        "--N",
        "4",
    ]));
    assert!(csv.starts_with("k,f\n1,"));
    assert_eq!(csv.lines().count(), 5);
    let v = json(&summatoria(&[
        "synth",
        "--function",
        "synth:log2",
        "--format",
        "json",
    ]));
    assert_eq!(v["perturbation"]["kind"], "log2");
    assert_eq!(v["values"], serde_json::json!([1.0, 0.0]));
}

#[test]
fn file_function_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.csv");
    let out = summatoria(&[
        "synth",
        "--function",
        "synth:log",
        "--N",
        "1000",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let id = format!("file:{}", path.display());
    let from_file = stdout(&summatoria(&[
        "compute",
        "--function",
        &id,
        "--N",
        "1000",
        "--checkpoints",
        "10,100,1000",
    ]));
    let direct = stdout(&summatoria(&[
        "compute",
        "--function",
        "synth:log",
        "--N",
        "1000",
        "--checkpoints",
        "10,100,1000",
    ]));
    assert_eq!(from_file, direct);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(
        &path,
        r#"{"function": "mu", "N": 100, "checkpoints": "100"}"#,
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    assert_eq!(
        stdout(&summatoria(&["compute", "--config", cfg])),
        "n,S\n100,1\n"
    );
    assert_eq!(
        stdout(&summatoria(&[
            "compute",
            "--config",
            cfg,
            "--N",
            "10",
            "--checkpoints",
            "10"
        ])),
        "n,S\n10,-1\n"
    );
    std::fs::write(&path, r#"{"function": "mu", "n": 100}"#).unwrap();
    assert_eq!(
        summatoria(&["compute", "--config", cfg]).status.code(),
        Some(1)
    );
}

#[test]
fn selftest_passes() {
    let out = summatoria(&["selftest"]);
    let text = stdout(&out);
    assert!(text.contains("5 passed, 0 failed"), "{text}");
}

#[test]
fn validation_errors_exit_with_one() {
    for args in [
        &["compute", "--function", "zeta", "--N", "10"][..],
        &[
            "compute",
            "--function",
            "mu",
            "--N",
            "10",
            "--checkpoints",
            "geometric(10,1)",
        ],
        &[
            "compute",
            "--function",
            "mu",
            "--N",
            "10",
            "--checkpoints",
            "20",
        ],
        &[
            "compute",
            "--function",
            "mu",
            "--N",
            "10",
            "--output",
            "/nonexistent/dir/out.csv",
        ],
        &["compute", "--function", "mu", "--N", "10", "--lag", "1"],
        &["compute", "--function", "mu"],
        &["compute", "--bogus"],
    ] {
        let out = summatoria(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn capacity_error_exits_with_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_summatoria"))
        .args(["compute", "--function", "mu", "--N", "10"])
        .env("SUMMATORIA_BLOCK_SIZE", "1000000000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn block_size_and_threads_do_not_change_output() {
    let args = ["compute", "--function", "mu-over-k", "--N", "2000000"];
    let base = stdout(&summatoria(&args));
    for threads in ["2", "3"] {
        let mut with = args.to_vec();
        with.extend(["--threads", threads]);
        assert_eq!(stdout(&summatoria(&with)), base);
    }
    let out = Command::new(env!("CARGO_BIN_EXE_summatoria"))
        .args(args)
        .env("SUMMATORIA_BLOCK_SIZE", "4099")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), base);
}
