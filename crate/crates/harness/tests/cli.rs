//! The `mcps` binary: output formats and exit codes.

use std::process::Command;

fn mcps(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mcps"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn match_writes_csv() {
    let args = [
        "match",
        "--game",
        "nogo5",
        "--agent",
        "mcps:ref=50",
        "--agent",
        "grave:ref=50,bias=1e-5",
        "--playouts",
        "30",
        "--games",
        "4",
        "--workers",
        "2",
        "--no-timing",
    ];
    let (code, out, err) = mcps(&args);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "seed,seat_perm,winner,reward_0,reward_1,plies,millis"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("1,1-0,"));
    assert!(lines[1..].iter().all(|l| l.ends_with(",0")));
    assert!(err.contains("mcps:ref=50"));
    // byte-identical rerun
    assert_eq!(mcps(&args).1, out);
}

#[test]
fn match_writes_json_to_a_file() {
    let dir = std::env::temp_dir().join(format!("mcps-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, _, err) = mcps(&[
        "match",
        "--game",
        "wargame-10",
        "--agent",
        "mcps",
        "--agent",
        "grave",
        "--playouts",
        "20",
        "--games",
        "2",
        "--code-mode",
        "abstract",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["games"], 2);
    assert_eq!(report["code_mode"], "abstract");
    assert_eq!(report["results"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn codestats_reports_every_mode() {
    let (code, out, _) = mcps(&["codestats", "--game", "videogame", "--playouts", "20"]);
    assert_eq!(code, 0);
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["modes"].as_array().unwrap().len(), 3);
    let (_, out, _) = mcps(&["codestats", "--game", "hex7", "--playouts", "1"]);
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["modes"][0]["universe_share"], 1.0);
    assert_eq!(r["initial_moves"], 1);
    assert_eq!(r["opening_moves"], 48);
}

#[test]
fn exit_codes() {
    assert_eq!(mcps(&["games"]).0, 0);
    assert_eq!(mcps(&["--help"]).0, 0);
    assert_eq!(mcps(&["match", "--game", "nogo5"]).0, 1);
    assert_eq!(
        mcps(&["match", "--game", "nogo5", "--agent", "uct", "--agent", "grave"]).0,
        1
    );
    assert_eq!(
        mcps(&[
            "match",
            "--game",
            "nogo5",
            "--agent",
            "mcps",
            "--agent",
            "grave",
            "--code-mode",
            "fuzzy"
        ])
        .0,
        1
    );
    assert_eq!(mcps(&["codestats", "--game", "chess"]).0, 1);
    let (code, _, err) = mcps(&[
        "match",
        "--game",
        "nogo5",
        "--agent",
        "mcps",
        "--agent",
        "grave",
        "--out",
        "/nonexistent-dir/x.csv",
        "--games",
        "1",
        "--playouts",
        "5",
    ]);
    assert_eq!(code, 2, "{err}");
}
