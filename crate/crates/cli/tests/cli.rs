use std::path::PathBuf;
use std::process::{Command, Output};

fn charkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charkit"))
        .arg("--no-cache")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("charkit-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn character_text() {
    let out = charkit(&["character", "0000002"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1*z7^2 -1*z6 -1*z1 -1");
}

#[test]
fn both_methods_agree() {
    let out = charkit(&["character", "1000001", "--method", "both"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn cg_of_56() {
    let out = charkit(&["cg", "0000001", "0000001"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], "dim_check true (3136)");
    for w in ["0000002:1", "1000000:1", "0000010:1", "0000000:1"] {
        assert!(lines.contains(&w), "{w} missing from {text}");
    }
}

#[test]
fn dim_of_trivial() {
    let out = charkit(&["dim", "0000000"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn comma_separated_weight() {
    let out = charkit(&["dim", "0,0,0,0,0,0,1"]);
    assert_eq!(stdout(&out).trim(), "56");
}

#[test]
fn bad_weight_is_usage_error() {
    let out = charkit(&["character", "00000x2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = charkit(&["dim", "000001"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_character_round_trips() {
    let out = charkit(&["--format", "json", "character", "0000002"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let terms = v["polynomial"].as_array().unwrap();
    let rebuilt: Vec<String> = terms
        .iter()
        .map(|t| {
            let coeff = t[0].as_str().unwrap();
            let exps: Vec<u64> = t[1].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect();
            format!("{coeff}:{exps:?}")
        })
        .collect();
    assert_eq!(
        rebuilt,
        [
            "1:[0, 0, 0, 0, 0, 0, 2]",
            "-1:[0, 0, 0, 0, 0, 1, 0]",
            "-1:[1, 0, 0, 0, 0, 0, 0]",
            "-1:[0, 0, 0, 0, 0, 0, 0]",
        ]
    );
}

#[test]
fn monomial_cg_accepts_both_spellings() {
    let a = charkit(&["monomial-cg", "z7^3"]);
    let b = charkit(&["monomial-cg", "0000003"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("1000001:3"));
}

#[test]
fn series_family_matches() {
    let out = charkit(&["series-family", "7", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("matches true"));
}

#[test]
fn verify_quadratic() {
    let out = charkit(&["verify", "--corpus", "quadratic"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 failed"));
}

#[test]
fn cache_is_written_and_reused() {
    let dir = scratch_dir("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_charkit"))
            .args(["--cache-dir", dir.to_str().unwrap(), "character", "0000011"])
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert!(dir.join("chars.txt").exists());
    let second = run();
    assert_eq!(stdout(&first), stdout(&second));
    std::fs::remove_dir_all(&dir).unwrap();
}
