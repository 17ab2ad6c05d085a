use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_braidforge"));
    c.env_remove("BRAIDFORGE_STATE_SUM_CAP")
        .env_remove("BRAIDFORGE_SEARCH_CAP");
    c
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    (code(&o), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&run(&["validate", "G2: X=1,2 O=2,1"])), 0);
    assert_eq!(code(&run(&["validate", "G2: X=1,2 O=1,2"])), 2);
    let bad = run(&["validate", "B3: 5"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("byte 4"));
}

#[test]
fn validate_reads_files_and_stdin() {
    assert_eq!(code(&run(&["validate", &fixture("cyclic5.grid")])), 0);
    let mut child = bin()
        .arg("validate")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"B3: 1 -2").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("strands 3"));
}

#[test]
fn braid_unknot_and_cyclic_grid() {
    let o = run(&["braid", "--check", "G2: X=1,2 O=2,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "B1:\ncheck: ok\n");

    let (c, v) = json(&["braid", "--check", "--trace", "G4: X=1,2,3,4 O=3,4,1,2"]);
    assert_eq!(c, 0);
    assert_eq!(v["braid"]["strands"], 2);
    assert_eq!(v["check"]["ok"], true);
    assert_eq!(v["trace"]["moves"].as_array().unwrap().len(), 2);

    assert_eq!(code(&run(&["braid", "G3: X=1,2 O=2,1"])), 2);
    assert_eq!(code(&run(&["braid", "B2: 1"])), 2);
}

#[test]
fn invariants_of_grid_braid_and_cap() {
    let (c, v) = json(&["invariants", "G2: X=1,2 O=2,1"]);
    assert_eq!(c, 0);
    assert_eq!(v["normalized_bracket"], serde_json::json!({"0": 1}));

    let (c, v) = json(&["invariants", "B2: 1 1"]);
    assert_eq!(c, 0);
    assert_eq!(v["components"], 2);
    assert_eq!(v["linking_matrix"][0][1].as_i64().unwrap().abs(), 1);

    let o = run(&["invariants", "--jones-t", "B2: 1 1"]);
    assert!(stdout(&o).contains("jones (t):"));

    let long = format!("B2:{}", " 1".repeat(26));
    assert_eq!(code(&run(&["invariants", &long])), 3);
    assert_eq!(code(&run(&["invariants", "--method", "auto", &long])), 0);
    let capped = bin()
        .args(["invariants", "B2: 1 1 1"])
        .env("BRAIDFORGE_STATE_SUM_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(code(&capped), 3);
}

#[test]
fn markov_replay_and_random() {
    let o = run(&[
        "markov",
        "apply",
        "B1:",
        "--moves",
        &fixture("stabilize.json"),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("result: B2: 1\n"));

    let (c, v) = json(&[
        "markov",
        "apply",
        "B3: 1 -2 1",
        "--random",
        "10",
        "--seed",
        "42",
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["preserved"], true);
    assert_eq!(v["steps"].as_array().unwrap().len(), 10);

    assert_eq!(
        code(&run(&[
            "markov",
            "apply",
            "B3: 1 2 1",
            "--moves",
            &fixture("inapplicable.json")
        ])),
        2
    );
}

#[test]
fn fuzz_passes_and_catches_a_corrupted_table() {
    assert_eq!(code(&run(&["fuzz", "--cases", "100", "--seed", "7"])), 0);
    assert_eq!(code(&run(&["fuzz", "--cases", "0"])), 0);
    let (c, v) = json(&[
        "fuzz",
        "--cases",
        "100",
        "--seed",
        "7",
        "--sign-table",
        &fixture("corrupted_sign_table.json"),
    ]);
    assert_eq!(c, 1);
    let ce = &v["counterexample"];
    assert_eq!(ce["move"]["move"], "l_move");
    assert_eq!(ce["move"]["kind"], "over");
    assert!(!ce["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn search_paths() {
    let (c, v) = json(&["search", "B3: 1 2", "B3: 1 2"]);
    assert_eq!(c, 0);
    assert_eq!(v["outcome"]["path"], serde_json::json!([]));

    let (c, v) = json(&["search", "B3: 1 2 1", "B3: 2 1 2"]);
    assert_eq!(c, 0);
    assert_eq!(v["outcome"]["path"][0]["move"], "relation");
    assert_eq!(v["outcome"]["path"][0]["kind"], "yang_baxter");

    let o = run(&["search", "B3: 1 2 1", "B3: 2 1 2", "--depth", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("not found within caps"));
}

#[test]
fn convert_directions() {
    let o = run(&["convert", "--to", "pd", "G2: X=1,2 O=2,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "{\"crossings\":[],\"free_loops\":1}\n");

    let (c, v) = json(&["convert", "--to", "braid-closure-pd", "B2: 1"]);
    assert_eq!(c, 0);
    assert_eq!(v["crossings"].as_array().unwrap().len(), 1);

    assert_eq!(
        code(&run(&[
            "convert",
            "--to",
            "grid",
            "{\"crossings\":[],\"free_loops\":1}"
        ])),
        2
    );
}
