use std::process::{Command, Output};

fn nakayama(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nakayama"))
        .args(args)
        .env_remove("NAKAYAMA_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn tau_prints_shortest_literal() {
    let o = nakayama(&["tau", "--shape", "linear", "-n", "9", "-l", "4", "-m", "2", "--object", "P0", "--power", "-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "S3");
}

#[test]
fn tau_round_trips_through_printed_literals() {
    let fwd = nakayama(&["tau", "-n", "9", "-l", "4", "-m", "2", "--object", "S3", "--power", "-4"]);
    assert_eq!(fwd.status.code(), Some(0));
    let lit = stdout(&fwd).trim().to_string();
    let back = nakayama(&["tau", "-n", "9", "-l", "4", "-m", "2", "--object", &lit, "--power", "4"]);
    assert_eq!(stdout(&back).trim(), "S3");
}

#[test]
fn classify_cyclic_closed_form() {
    let o = nakayama(&["classify", "--shape", "cyclic", "-n", "7", "-l", "2", "-m", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Finite");
    let o = nakayama(&["classify", "-n", "9", "-l", "3", "-m", "5", "--empirical"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Infinite\nempirical: Infinite("));
}

#[test]
fn exhausted_budget_exits_inconclusive() {
    let o = nakayama(&["knit", "--shape", "linear", "-n", "9", "-l", "6", "-m", "2", "--budget", "100", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["closed"], false);
}

#[test]
fn usage_and_parameter_errors_exit_one() {
    assert_eq!(nakayama(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(nakayama(&["tau", "-n", "3", "-l", "2", "-m", "1", "--object", "Q2", "--power", "1"]).status.code(), Some(1));
    assert_eq!(nakayama(&["classify", "-n", "3", "-l", "1", "-m", "1"]).status.code(), Some(1));
    assert_eq!(nakayama(&["table", "--n", "5..3", "--l", "2..3", "--m", "1..2"]).status.code(), Some(1));
    assert_eq!(nakayama(&["cyclic-ar", "-n", "2", "-l", "3", "-m", "5"]).status.code(), Some(1));
    assert_eq!(nakayama(&["--help"]).status.code(), Some(0));
}

#[test]
fn knit_writes_reproducible_dot() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.dot");
    let b = dir.path().join("b.dot");
    for p in [&a, &b] {
        let o = nakayama(&[
            "knit", "--shape", "linear", "-n", "9", "-l", "3", "-m", "3", "--mode", "exact", "--direction", "forward",
            "--format", "dot", "-o", p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("style=dashed"));
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn seed_from_environment_is_accepted() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_nakayama"))
            .args(["knit", "-n", "4", "-l", "3", "-m", "2", "--mode", "exact", "--format", "json"])
            .env("NAKAYAMA_SEED", seed)
            .output()
            .unwrap()
    };
    let (x, y) = (run("12345"), run("0x3039"));
    assert_eq!(x.status.code(), Some(0));
    assert_eq!(x.stdout, y.stdout);
    assert_eq!(run("nope").status.code(), Some(1));
}

#[test]
fn cyclic_ar_json_schema() {
    let o = nakayama(&["cyclic-ar", "-n", "4", "-l", "3", "-m", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebra"]["shape"], "cyclic");
    assert_eq!(v["algebra"]["n"], 4);
    let nodes = v["nodes"].as_array().unwrap();
    assert!(nodes.iter().any(|x| x["label"] == "C0:3"));
    assert!(nodes.iter().all(|x| x["dimvec"][0].as_array().unwrap().len() == 4));
}

#[test]
fn table_text_and_json() {
    let o = nakayama(&["table", "--n", "3..11", "--l", "2..7", "--m", "1..6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row3 = text.lines().find(|l| l.trim_start().starts_with("3 ")).unwrap();
    assert!(row3.ends_with("≤4    ≤4    ≤4"), "{row3}");
    let o = nakayama(&["table", "--n", "8..9", "--l", "4..4", "--m", "2..3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}
