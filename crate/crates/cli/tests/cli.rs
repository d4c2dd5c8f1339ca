use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbtaut")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn chi_spot_values() {
    let o = run(&["chi", "--surface", "p2", "--n", "3", "--k", "3", "--L", "2", "--A", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("chi=56"));
    let o = run(&["chi", "--surface", "k3", "--n", "1", "--k", "0", "--L", "0", "--A", "0"]);
    assert!(stdout(&o).contains("chi=2"));
}

#[test]
fn chi_csv_layout() {
    let o = run(&["chi", "--surface", "p2", "--n", "2", "--k", "3", "--L", "3", "--A", "1", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "surface,n,k,L,A,chi,gr_0,gr_1");
    assert_eq!(lines[1].split(',').nth(5), Some("540"));
    assert!(lines[1].split(',').all(|f| !f.contains('"')));
}

#[test]
fn chi_json_flags() {
    let o = run(&["chi", "--surface", "p2", "--n", "3", "--k", "2", "--L", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["derived"], true);
    assert_eq!(v[0]["conjectural"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["chi", "--surface", "p2", "--n", "3", "--k", "5", "--L", "1"]).status.code(), Some(2));
    assert_eq!(run(&["chi", "--surface", "nowhere.json", "--n", "1", "--k", "1", "--L", "1"]).status.code(), Some(2));
    assert_eq!(run(&["kernel", "--n", "3", "--k", "5", "--max-degree", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["toeplitz", "--kind", "T", "--n", "1", "--m", "3"]).status.code(), Some(2));
}

#[test]
fn kernel_and_reps() {
    let o = run(&["kernel", "--n", "2", "--k", "2", "--max-degree", "2", "--invariant"]);
    assert!(stdout(&o).contains("cumulative [1, 5, 18]"));
    let o = run(&["reps", "--k", "3"]);
    assert_eq!(stdout(&o).trim(), "3 t^2");
    let o = run(&["toeplitz", "--kind", "T", "--even", "--n", "1", "--m", "3", "--det"]);
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn exploratory_output_is_marked() {
    let o = run(&["graded", "--n", "3", "--k", "5", "--max-degree", "1", "--rule", "per-pair", "--exploratory", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["conjectural"], true);
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--suite", "toeplitz"]);
    let b = run(&["verify", "--suite", "toeplitz"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = run(&["verify", "--suite", "recursion", "--seed", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["passed"], true);
}

#[test]
fn user_model_file() {
    let path = std::env::temp_dir().join("hilbtaut_cli_model.json");
    std::fs::write(&path, r#"{"name":"plane","rank":1,"intersection":[[1]],"K":[-3],"chiO":1,"c2":3}"#).unwrap();
    let o = run(&["chi", "--surface", path.to_str().unwrap(), "--n", "3", "--k", "3", "--L", "2"]);
    assert!(stdout(&o).contains("chi=56"));
    std::fs::write(&path, r#"{"name":"bad","rank":1,"intersection":[[1]],"K":[-3],"chiO":1,"c2":4}"#).unwrap();
    assert_eq!(run(&["chi", "--surface", path.to_str().unwrap(), "--n", "1", "--k", "1", "--L", "1"]).status.code(), Some(2));
}
