//! Plain CLI behaviour: text renderings, validation verdicts, json shapes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crorbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn classify_text_output() {
    let text = stdout(&["classify", "su(2,2) cross {2,3}"]);
    assert!(text.contains("o--o--o"));
    assert!(text.contains("arrows: (1~3)"));
    assert!(text.contains("type (n,k): (1,4)"));
    assert!(text.contains("fundamental: false"));
    assert!(text.contains("ideal nondegenerate: true"));
}

#[test]
fn validate_reports_the_normalized_diagram() {
    let text = stdout(&["validate", "su(1,3) cross {1,2}"]);
    assert_eq!(
        text.trim(),
        "valid: A3 rank 3 black {2} arrows (1,3) cross {1,2}"
    );
}

#[test]
fn fiber_text_shows_trivial_fibers() {
    let text = stdout(&["fiber", "su(1,3) cross {1,2}", "--psi", "{2}"]);
    assert!(text.contains("fiber: (trivial)"));
    assert!(text.contains("cr fibration: false"));
}

#[test]
fn reduce_full_walks_both_reductions() {
    let text = stdout(&["reduce", "su(2,2) cross {2,3}", "--mode", "full"]);
    assert!(text.contains("totally real base (psi {2})"));
    assert!(text.contains("fundamental fiber:"));
    assert!(text.contains("weak reduction removes: {3}"));
    assert!(text.contains("totally complex fiber:"));
}

#[test]
fn sweep_json_has_the_report_shape() {
    let text = stdout(&["sweep", "--rank-max", "1", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["rank_bound"], serde_json::json!(1));
    assert_eq!(value["mismatches"], serde_json::json!([]));
    assert!(value["instances_checked"].as_u64().unwrap() > 0);
}

#[test]
fn table_json_carries_full_analyses() {
    let text = stdout(&[
        "table",
        "--family",
        "sl_h",
        "--rank-max",
        "3",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = value.as_array().unwrap();
    // sl_h(1) on A1 and sl_h(2) on A3.
    assert_eq!(rows.len(), 2 + 8);
    assert_eq!(rows[0]["params"], serde_json::json!("1"));
    assert!(rows[0]["analysis"]["fundamental"].is_boolean());
}

#[test]
fn table_golden_for_small_su() {
    let expected = "\
family,params,cross_bitmask,n,k,effective,fundamental,weak,strict,ideal
su,1-1,0,0,0,false,true,true,true,true
su,1-1,1,0,1,true,false,true,true,true
su,1-2,0,0,0,false,true,true,true,true
su,1-2,1,1,1,true,true,true,true,true
su,1-2,2,1,1,true,true,true,true,true
su,1-2,3,0,3,true,false,true,true,true
";
    assert_eq!(stdout(&["table", "--family", "su", "--rank-max", "2"]), expected);
}

#[test]
fn render_formats() {
    let dot = stdout(&["render", "su(1,3) cross {1,2}", "--format", "dot"]);
    assert!(dot.starts_with("graph diagram {"));
    assert!(dot.contains("n2 [label=\"2\", style=filled"));
    assert!(dot.contains("dir=both"));

    let ascii = stdout(&["render", "su(2,2) cross {2,3}", "--psi", "{2}"]);
    assert!(ascii.contains("1  3"));

    let trivial = stdout(&["render", "su(1,3) cross {1,2}", "--psi", "{2}"]);
    assert_eq!(trivial.trim(), "(trivial)");

    let json = stdout(&["render", "su(2,2) cross {2,3}", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["cross"], serde_json::json!([2, 3]));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["classify", "--help"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(1));
}
