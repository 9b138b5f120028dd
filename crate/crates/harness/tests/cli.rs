use std::process::{Command, Output};

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn field_summary() {
    let out = carlitz(&["field", "--p", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "q: 9\nmodulus: 1,0,1\nprimitive: 4\n");
}

#[test]
fn rank_of_inversion() {
    let out = carlitz(&["crk", "--p", "5", "--perm", "0,1,3,2,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("rank: 1\n"));
    let out = carlitz(&["crk", "--p", "5", "--form", "1,0,0"]);
    assert!(stdout(&out).starts_with("rank: 1\n"));
    let out = carlitz(&["crk", "--p", "5", "--perm", "0,1,4,4,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mu_and_curve_emit_json() {
    let out = carlitz(&["mu", "--p", "7", "--form", "1,0,0", "--g", "0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["k"], 2);
    let out = carlitz(&["curve", "--p", "7", "--k", "2", "--b", "1", "--c", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((v["m"].as_u64(), v["genus"].as_u64()), (Some(3), Some(1)));
    let out = carlitz(&["curve", "--p", "7", "--k", "2", "--b", "0", "--c", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_reports() {
    let dir = std::env::temp_dir().join(format!("carlitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("main.json");
    let args = ["verify", "main", "--p", "5", "--r", "1", "--n-max", "2", "--k-max", "2", "--workers", "2"];
    let out = carlitz(&[&args[..], &["--out", json.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["verdict"], "PASS");
    let out = carlitz(&[&args[..], &["--format", "csv"]].concat());
    assert!(stdout(&out).starts_with("campaign,verdict,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reads_config_files() {
    let dir = std::env::temp_dir().join(format!("carlitz-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cfg.json");
    std::fs::write(&path, r#"{"kind": "curve_sweep", "fields": [{"p": 7, "r": 1}], "k_max": 2, "budget": 5}"#).unwrap();
    let out = carlitz(&["verify", "curve", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 2);
    std::fs::write(&path, r#"{"kind": "sideways"}"#).unwrap();
    assert_eq!(carlitz(&["verify", "curve", "--config", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(carlitz(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(carlitz(&["field", "--p", "6"]).status.code(), Some(2));
    assert_eq!(carlitz(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn example_table() {
    let out = carlitz(&["example-f9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with(" true") || l.ends_with(" false")).count(), 4);
    assert!(text.contains("PASS example_f9"));
}
