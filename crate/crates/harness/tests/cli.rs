use std::fs;
use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_boundcs"))
}

#[test]
fn stream_from_stdin_and_file() {
    let mut child = bin()
        .args(["stream", "--prior-json", r#"{"kind":"laplace","scale":0.5}"#, "--method", "eville-bracket"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0.3\n\n1.1\n-0.4\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,method,lo,hi,interval,ybar,estimate,conflict");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("3,eville_bracket,"));

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("obs.txt");
    fs::write(&input, "1\n2\n").unwrap();
    let prior = dir.path().join("prior.json");
    fs::write(&prior, r#"{"kind":"improper_tilted","kappa":0}"#).unwrap();
    let csv = dir.path().join("run.csv");
    let status = bin()
        .args([
            "stream",
            input.to_str().unwrap(),
            "--prior-json",
            prior.to_str().unwrap(),
            "--out",
            csv.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("run.csv.json")).unwrap()).unwrap();
    assert_eq!(sidecar["command"], "stream");
    assert_eq!(sidecar["config"]["n_max"], 2);
    assert_eq!(sidecar["extra"]["final_region"]["intervals"].as_array().unwrap().len(), 1);
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 3);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], stdin: &str| {
        let mut child =
            bin().args(args).stdin(Stdio::piped()).stdout(Stdio::null()).stderr(Stdio::null()).spawn().unwrap();
        child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
        child.wait().unwrap().code().unwrap()
    };
    let g = r#"{"kind":"gaussian"}"#;
    assert_eq!(code(&["stream", "--prior-json", g], "1\nx\n"), 2);
    assert_eq!(code(&["stream", "--prior-json", r#"{"kind":"nope"}"#], "1\n"), 2);
    assert_eq!(code(&["stream", "--prior-json", g, "--alpha", "2"], "1\n"), 2);
    assert_eq!(code(&["stream", "--prior-json", r#"{"kind":"improper_tilted"}"#, "--method", "ville"], "1\n"), 3);
    assert_eq!(code(&["stream", "--prior-json", g], "1\n"), 0);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"replications": 5}"#).unwrap();
    assert_eq!(
        code(&["coverage", "--config", cfg.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()], ""),
        2
    );
}

#[test]
fn experiment_writes_tables_with_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("d.json");
    fs::write(&cfg, r#"{"ybars": [1.5], "alphas": [0.4]}"#).unwrap();
    let out = dir.path().join("out");
    let status = bin()
        .args(["disconnected", "--config", cfg.to_str().unwrap(), "--out-dir", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let table = fs::read_to_string(out.join("disconnected.csv")).unwrap();
    assert_eq!(table.lines().count(), 3);
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("disconnected.csv.json")).unwrap()).unwrap();
    assert_eq!(sidecar["config"]["alphas"][0], 0.4);
    assert_eq!(sidecar["version"], env!("CARGO_PKG_VERSION"));
}
