use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bubble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bubble")).args(args).output().expect("binary runs")
}

fn bubble_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bubble"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn basis_counts() {
    let v = json(&bubble(&["basis", "-n", "2", "-m", "2"]));
    assert_eq!(v["count"], 10);
    assert_eq!(v["elements"].as_array().unwrap().len(), 10);
    let cell = json(&bubble(&["basis", "-n", "4", "-m", "2", "--lambda", "0,2"]));
    assert_eq!(cell["kind"], "cell");
    assert_eq!(cell["count"], 9);
}

#[test]
fn gram_of_empty_weight() {
    let v = json(&bubble(&["gram", "-n", "2", "-m", "2", "--lambda", "0,0"]));
    assert_eq!(v["entries"], serde_json::json!([["d0", "0"], ["0", "d1"]]));
}

#[test]
fn factorised_gram_lists_blocks() {
    let v = json(&bubble(&["gram", "-n", "4", "--lambda", "0,2", "--method", "factorized"]));
    assert_eq!(v["dim"], 9);
    let dims: u64 = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            b["multiplicity"].as_u64().unwrap()
                * b["factor_dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).product::<u64>()
        })
        .sum();
    assert_eq!(dims, 9);
}

#[test]
fn golden_decomposition() {
    let v = json(&bubble(&[
        "decomp",
        "-n",
        "6",
        "-m",
        "2",
        "--delta",
        "root:2",
        "--delta",
        "root:4",
        "--order",
        "paper-6-2",
    ]));
    let blocks = v["blocks"].as_array().unwrap();
    let sizes: Vec<usize> = blocks.iter().map(|b| b["rows"].as_array().unwrap().len()).collect();
    assert_eq!(sizes, vec![5, 2, 5, 1, 1, 1, 1]);
    assert_eq!(
        blocks[2]["entries"],
        serde_json::json!([[1, 1, 1, 0, 1], [0, 1, 0, 1, 1], [0, 0, 1, 0, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    );
    let c = json(&bubble(&[
        "cartan",
        "-n",
        "6",
        "-m",
        "2",
        "--delta",
        "root:2",
        "--delta",
        "root:4",
        "--order",
        "paper-6-2",
    ]));
    assert_eq!(c["blocks"][2]["entries"][4][4], 4);
}

#[test]
fn output_is_stable() {
    let args = ["dims", "-n", "5", "--delta", "root:3", "--delta", "root:4"];
    let a = bubble(&args);
    let b = bubble(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn formats() {
    let csv = bubble(&["decomp", "-n", "4", "--delta", "root:2", "--delta", "root:3", "--format", "csv"]);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with(",\"(4,0)\",\"(3,1)\""), "{text}");
    let dot = bubble(&["blocks", "-n", "4", "--delta", "root:2", "--delta", "root:3", "--dot"]);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("digraph"));
    let bad = bubble(&["multiply", "--format", "csv"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn multiply_from_stdin() {
    let input = "n=2 m=2; 1:{1,2}; 1:{1',2'}\n# comment\nn=2 m=2; 1:{1,2}; 1:{1',2'}\n";
    let v = json(&bubble_stdin(&["multiply"], input));
    assert_eq!(v["coefficient"], "d1");
    assert_eq!(v["diagram"], "n=2 m=2; 1:{1,2}; 1:{1',2'}");
    let zero = "n=1 m=2; 0:{1,1'}\nn=1 m=2; 1:{1,1'}\n";
    let v = json(&bubble_stdin(&["multiply"], zero));
    assert_eq!(v["coefficient"], "0");
    assert!(v["diagram"].is_null());
}

#[test]
fn multiply_from_files() {
    let dir = std::env::temp_dir().join(format!("bubble-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.txt");
    let b = dir.join("b.txt");
    std::fs::write(&a, "n=2 m=1; 0:{1,2}; 0:{1',2'}\n").unwrap();
    std::fs::write(&b, "n=2 m=1; 0:{1,2}; 0:{1',2'}\n").unwrap();
    let v = json(&bubble(&["multiply", a.to_str().unwrap(), b.to_str().unwrap(), "--delta", "root:3"]));
    assert_eq!(v["coefficient"], "d0");
    assert_eq!(v["value"], "1");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn invalid_input_exits_2() {
    let cases: &[&[&str]] = &[
        &["gram", "-n", "3", "--lambda", "0,0"],
        &["gram", "-n", "2"],
        &["rank", "-n", "3"],
        &["dims", "-n", "3", "--delta", "root:3"],
        &["dims", "-n", "3", "--delta", "2", "--delta", "3"],
        &["dims", "-n", "3", "--delta", "root:1", "--delta", "3"],
        &["decomp", "-n", "4", "--order", "paper-6-2"],
        &["basis"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = bubble(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} printed no diagnostic");
    }
    let out = bubble_stdin(&["multiply"], "n=2 m=2; 0:{1,2'}; 0:{2,1'}\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symbolic_guard_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bubble"))
        .args(["det", "-n", "4", "--lambda", "0,0"])
        .env("BUBBLE_MAX_SYMBOLIC_DIM", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the limit 4"));
    let formula = json(&bubble(&["det", "-n", "4", "--lambda", "0,0", "--method", "formula"]));
    let direct = json(&bubble(&["det", "-n", "4", "--lambda", "0,0"]));
    assert_eq!(formula["determinant"], direct["determinant"]);
}

#[test]
fn rank_agrees_with_head() {
    let v = json(&bubble(&["rank", "-n", "5", "--delta", "root:2", "--delta", "root:4"]));
    for row in v.as_array().unwrap() {
        assert_eq!(row["rank"], row["head"], "{row}");
    }
}

#[test]
fn check_suite_passes() {
    let out = bubble(&["check", "-n", "3", "-m", "2", "--delta", "root:3", "--delta", "root:4", "--format", "text"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    assert!(!text.contains("FAIL"));
}
