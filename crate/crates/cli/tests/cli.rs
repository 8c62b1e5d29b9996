use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neighborly"))
        .args(args)
        .env_remove("NEIGHBORLY_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn chain_table() {
    let o = run(&["table", "bn", "--max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1, 1, 0, -1, 1, 0\n");

    let o = run(&["table", "bn", "--max", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,sign\n1,-1\n2,1\n3,0\n");
}

#[test]
fn show_draws_both_graphs() {
    let o = run(&["show", "1,2,3,6,8,9,14/3,6,8,9,14"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(
        "G:\n1 - 2 - 3    6    8 - 9    14\n        |    |    |   |    |\n        3    6    8   9    14\n"
    ));
    assert!(text.contains("signature 0"));
    assert!(text.contains("G': not defined"));

    let o = run(&["show", "1,2,3,4,5,6,7/1,3,6", "--deletion-rule", "example-consistent"]);
    assert!(stdout(&o).contains("G':\n1 - 2   3 - 4   5 - 6 - 7\n|       |           |\n1       3           6\nedges 7\n"));
}

#[test]
fn show_accepts_multiset() {
    let a = stdout(&run(&["show", "1,1,2"]));
    let b = stdout(&run(&["show", "1,2/1"]));
    assert_eq!(a, b);
}

#[test]
fn verify_rr1_emits_coefficients() {
    let o = run(&["verify", "rr1", "--max-weight", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("rr1          PASS"));
    assert!(text.contains("coefficients through q^30: 1, 0, -1, -1, 0, 0,"));
}

#[test]
fn json_report_schema() {
    let o = run(&["verify", "rr2", "--max-weight", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json");
    assert_eq!(v["check"], "rr2");
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["params"]["max_weight"], 20);
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert_eq!(v["series"]["order"], 20);
    assert!(v["counts"]["neighborly"].as_u64().unwrap() > 0);
}

#[test]
fn output_is_deterministic() {
    for format in ["json", "csv", "text"] {
        let args = ["verify", "all", "--max-weight", "16", "--q-order", "16", "--format", format];
        assert_eq!(run(&args).stdout, run(&args).stdout, "{format}");
    }
    let args = ["enumerate", "--max-weight", "14", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn printed_odd_sign_fails_with_encoded_exit() {
    let o = run(&["verify", "edgevertex", "--sign-convention", "printed", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(19));
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().starts_with("edgevertex,FAIL,x^3 q^4,-1,1,"));
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(" PASS")).count(), 10);
}

#[test]
fn budget_override_is_reported_distinctly() {
    let o = Command::new(env!("CARGO_BIN_EXE_neighborly"))
        .args(["verify", "rr1"])
        .env("NEIGHBORLY_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "rr1", "--max-weight", "-3"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--min-part", "0"]).status.code(), Some(2));
    assert_eq!(run(&["show", "1,3/"]).status.code(), Some(3));
}

#[test]
fn enumerate_weight_eight() {
    let o = run(&["enumerate", "--max-weight", "8", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let mut at8: Vec<(String, i64)> = rows
        .iter()
        .filter(|r| r["weight"] == 8)
        .map(|r| (r["partition"].as_str().unwrap().to_string(), r["sign"].as_i64().unwrap()))
        .collect();
    at8.sort();
    assert_eq!(
        at8,
        [("1,2,3/2".into(), -1), ("1,3/1,3".into(), 1), ("2,3/3".into(), 1), ("4/4".into(), -1)]
    );
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("neighborly-cli-{}.csv", std::process::id()));
    let o = run(&["table", "bn", "--max", "4", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,sign\n1,-1\n2,1\n3,0\n4,-1\n");
    std::fs::remove_file(path).unwrap();
}
