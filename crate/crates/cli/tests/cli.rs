use std::fs;
use std::process::{Command, Output};

fn lrcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrcone"))
        .args(args)
        .env_remove("LRCONE_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_text_and_csv() {
    let o = lrcone(&["enumerate", "-e", "diag:A1", "--bound", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("embedding diag:A1 bound 2 saturated true points 14 dim_c 3"));

    let o = lrcone(&[
        "enumerate",
        "-e",
        "diag:A1",
        "--bound",
        "2",
        "--format",
        "csv",
        "--sequential",
    ]);
    let csv = stdout(&o);
    assert_eq!(csv.lines().next(), Some("mu_1,nuhat_1,nuhat_2,mult"));
    assert_eq!(csv.lines().count(), 15);
}

#[test]
fn delta_reports_both_values() {
    let o = lrcone(&["delta", "-e", "diag:A2", "--face", ""]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("direct 2\n"), "{text}");
    assert!(text.contains("theoretical 2\n"), "{text}");

    let o = lrcone(&[
        "delta", "-e", "sym2:2", "--face", "full", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["direct"]["value"], 0);
    assert_eq!(v["theoretical"]["value"], 0);
}

#[test]
fn kernel_dim_predicts_dim_c() {
    let o = lrcone(&["kernel-dim", "-e", "wedge2:4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim_c"], 8);
}

#[test]
fn stabilizer_and_flags() {
    let o = lrcone(&[
        "stabilizer",
        "-e",
        "sym2:2",
        "--face",
        "1",
        "--actor",
        "B_L",
        "--trials",
        "2",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dims_per_trial [0, 0]"));

    let o = lrcone(&["flags-paper", "-e", "sym2:3"]);
    let text = stdout(&o);
    assert!(text.contains("stabilizer dim 0"), "{text}");
    assert!(text.contains("all faces full: true"), "{text}");
}

#[test]
fn polmom_on_the_diagonal() {
    let o = lrcone(&["polmom", "-e", "diag:A1", "--face", "", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"][0]["nuhat"], serde_json::json!([1, 1]));
    assert_eq!(v["entries"][0]["lhs"], 1);
    assert_eq!(v["entries"][0]["holds"], true);
}

#[test]
fn dump_is_json() {
    let o = lrcone(&["dump", "-e", "tensor:2x2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["name"], "tensor:2x2");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["enumerate", "-e", "bogus:1"][..],
        &["enumerate", "-e", "wedge2:3"],
        &["delta", "-e", "diag:A1", "--face", "4"],
        &["stabilizer", "-e", "diag:A1", "--face", "", "--actor", "Q"],
        &["frobnicate"],
    ] {
        let o = lrcone(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(lrcone(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_dir_and_sample_integrity() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lrcone"))
        .args([
            "enumerate",
            "-e",
            "diag:A1",
            "--bound",
            "2",
            "--format",
            "json",
            "--out",
            "s.json",
        ])
        .env("LRCONE_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let path = dir.path().join("s.json");
    let good = path.to_str().unwrap();

    let o = lrcone(&["check-all", "--embedding", "diag:A1", "--sample", good]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );

    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    v["points"][3]["mult"] = serde_json::json!(5);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, v.to_string()).unwrap();
    let o = lrcone(&[
        "check-all",
        "--embedding",
        "diag:A1",
        "--sample",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));

    fs::write(&bad, "{ not json").unwrap();
    let o = lrcone(&[
        "check-all",
        "--embedding",
        "diag:A1",
        "--sample",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_all_is_deterministic() {
    let args = [
        "check-all",
        "--embedding",
        "diag:A1",
        "--embedding",
        "sym2:2",
        "--format",
        "json",
    ];
    let a = lrcone(&args);
    let b = lrcone(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["seed"], 0x5eed);
}
