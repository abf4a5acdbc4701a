use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ntdice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntdice"))
        .args(args)
        .output()
        .unwrap()
}

fn ntdice_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ntdice"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn construct_json_round_trips_through_verify() {
    let built = ntdice(&["construct", "--n", "5", "--p", "3/5", "--format", "json"]);
    assert_eq!(built.status.code(), Some(0));
    let json = stdout(&built);
    let verified = ntdice_stdin(
        &["verify", "-", "--claim", "3/5", "--format", "json"],
        &json,
    );
    assert_eq!(
        verified.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&verified.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&verified)).unwrap();
    assert_eq!(report["balanced"], true);
    assert_eq!(report["w"], "3/5");
}

#[test]
fn construct_is_deterministic() {
    let a = ntdice(&["construct", "--n", "6", "--p", "13/20", "--format", "json"]);
    let b = ntdice(&["construct", "--n", "6", "--p", "13/20", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn word_output_verifies() {
    let built = ntdice(&["construct", "--n", "4", "--p", "2/3", "--format", "word"]);
    let word = stdout(&built);
    let verified = ntdice(&["verify", "--word", word.trim(), "--claim", "2/3"]);
    assert_eq!(verified.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(
        ntdice(&["construct", "--n", "3", "--p", "2/3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ntdice(&["construct", "--n", "2", "--p", "3/5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ntdice(&["construct", "--n", "5", "--p", "0.6"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        ntdice(&["verify", "--word", "1 2 x"]).status.code(),
        Some(4)
    );
    assert_eq!(
        ntdice(&["verify", "--word", "1 2 3", "--claim", "1/2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ntdice(&[
            "construct",
            "--n",
            "5",
            "--p",
            "69/100",
            "--max-faces",
            "1000"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        ntdice(&["spectrum", "--n", "3", "--sides", "9,9,9"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn bound_and_pstar() {
    assert_eq!(
        stdout(&ntdice(&["bound", "--n", "4"])).trim(),
        "2/3 (exact)"
    );
    assert!(stdout(&ntdice(&["bound", "--n", "5"])).starts_with("0.692021471630"));
    let pstar = ntdice(&["pstar", "--n", "7"]);
    assert_eq!(pstar.status.code(), Some(0));
    assert!(stdout(&pstar).contains("0.605069"));
}

#[test]
fn spectrum_and_lemma4() {
    let spectrum = ntdice(&[
        "spectrum", "--n", "3", "--sides", "3,3,3", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&spectrum)).unwrap();
    assert_eq!(value["max_w"], "5/9");
    let box_check = ntdice(&["lemma4", "--m", "3,3,3", "--a", "1,2"]);
    assert_eq!(box_check.status.code(), Some(0), "{}", stdout(&box_check));
}
