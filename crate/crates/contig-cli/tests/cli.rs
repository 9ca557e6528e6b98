//! End-to-end tests of the `contig` binary: output shapes, format
//! resolution, exit codes, and byte-for-byte agreement with the checked-in
//! golden files.

use std::path::Path;
use std::process::{Command, Output};

fn contig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contig"))
        .args(args)
        .env_remove("CONTIG_FORMAT")
        .output()
        .expect("failed to run contig")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn pq_identity_shift_prints_the_trivial_pair() {
    let output = contig(&["pq", "1", "0", "0"]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "P = 0\nQ = 1\n");
}

#[test]
fn pq_accepts_negative_shifts_and_all_methods_agree() {
    let mut texts = Vec::new();
    for method in ["auto", "path", "dc"] {
        let output = contig(&["pq", "-2", "1", "-1", "--method", method]);
        assert!(output.status.success(), "method {method} failed");
        texts.push(stdout(&output));
    }
    assert_eq!(texts[0], texts[1]);
    assert_eq!(texts[1], texts[2]);
    assert!(texts[0].starts_with("P = "));
}

#[test]
fn pq_json_output_round_trips_through_the_library_types() {
    let output = contig(&["pq", "0", "1", "0", "--format", "json"]);
    assert!(output.status.success());
    let parsed: contig::PqJson = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(parsed.shift, [0, 1, 0]);
    let p = contig::parse_expr(&parsed.p).unwrap();
    let q = contig::parse_expr(&parsed.q).unwrap();
    let pair = contig::PqEngine::global().pq(contig::ShiftVector::new(0, 1, 0), contig::Method::Auto);
    assert_eq!(p, pair.p);
    assert_eq!(q, pair.q);
}

#[test]
fn relation_json_matches_the_golden_files_byte_for_byte() {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases = [
        (["1,0,0", "0,0,0", "-1,0,0"], "relation_a_pm.json"),
        (["1,0,0", "0,0,-1", "0,0,0"], "relation_ac.json"),
        (["1,0,0", "0,1,0", "0,0,0"], "relation_ab.json"),
    ];
    for (shifts, file) in cases {
        let output = contig(&[
            "relation", shifts[0], shifts[1], shifts[2], "--format", "json",
        ]);
        assert!(output.status.success(), "{file}: relation failed");
        let golden = std::fs::read_to_string(golden_dir.join(file)).unwrap();
        assert_eq!(stdout(&output), golden, "{file} drifted");
    }
}

#[test]
fn relation_latex_ends_with_an_equation() {
    let output = contig(&["relation", "1,0,0", "0,1,0", "0,0,0", "--format", "latex"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains(r"{}_2F_1"));
    assert!(text.trim_end().ends_with("= 0"));
}

#[test]
fn malformed_shift_triple_exits_with_the_usage_code() {
    let output = contig(&["relation", "1,0", "0,0,0", "-1,0,0"]);
    assert_eq!(output.status.code(), Some(2));
    let output = contig(&["relation", "1,0,x", "0,0,0", "-1,0,0"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn equal_shifts_are_rejected_as_input_errors() {
    let output = contig(&["relation", "1,0,0", "1,0,0", "0,0,0"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.starts_with("error: "), "stderr was: {stderr}");
}

#[test]
fn verify_theorem_passes_on_a_small_box() {
    let output = contig(&["verify", "theorem", "--max-shift", "1", "--seed", "7"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("PASS initial-conditions"));
    assert!(text.contains("ok: 13 checks passed"));
}

#[test]
fn verify_series_passes_and_covers_generated_relations() {
    let output = contig(&[
        "verify", "series", "--trials", "1", "--order", "8", "--seed", "3",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("PASS series: F(a+1) / F(a-1)"));
    assert!(text.contains("PASS series: generated F("));
    assert!(text.contains("ok: 20 checks passed"));
}

#[test]
fn kummer_prints_the_exact_pair_and_passes_its_check() {
    let output = contig(&["kummer", "--n", "1"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("P(1) = (a - b)/(2*a)"));
    assert!(text.contains("Q(1) = (1)/(2)"));
    assert!(text.contains("PASS"));
}

#[test]
fn kummer_reports_an_inadmissible_point_with_exit_code_three() {
    let output = contig(&["kummer", "--n", "0", "--a", "3", "--b", "3/2"]);
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("error: "), "stderr was: {stderr}");
}

#[test]
fn classfn_builtins_land_in_the_same_class() {
    let output = contig(&["classfn", "--builtin", "0f1-up", "--compare", "0f1-down"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("class = "));
    assert!(text.contains("same class as 0f1-down: true"));
}

#[test]
fn classfn_accepts_explicit_coefficients() {
    let output = contig(&[
        "classfn",
        "--A",
        "-z / ((c + n)*(c + n - 1))",
        "--B",
        "-1",
        "--C",
        "1",
        "--compare",
        "0f1-up",
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("same class as 0f1-up: true"));
}

#[test]
fn classfn_requires_a_complete_coefficient_set() {
    let output = contig(&["classfn", "--A", "1", "--B", "1"]);
    assert_eq!(output.status.code(), Some(2));
    let output = contig(&["classfn", "--builtin", "no-such-recurrence"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn format_env_variable_sets_the_default() {
    let output = Command::new(env!("CARGO_BIN_EXE_contig"))
        .args(["pq", "1", "0", "0"])
        .env("CONTIG_FORMAT", "json")
        .output()
        .unwrap();
    assert!(output.status.success());
    let parsed: contig::PqJson = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(parsed.shift, [1, 0, 0]);

    // An explicit flag wins over the environment.
    let output = Command::new(env!("CARGO_BIN_EXE_contig"))
        .args(["pq", "1", "0", "0", "--format", "text"])
        .env("CONTIG_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(stdout(&output), "P = 0\nQ = 1\n");

    // A value the command cannot honour falls back to text.
    let output = Command::new(env!("CARGO_BIN_EXE_contig"))
        .args(["pq", "1", "0", "0"])
        .env("CONTIG_FORMAT", "latex")
        .output()
        .unwrap();
    assert_eq!(stdout(&output), "P = 0\nQ = 1\n");
}

#[test]
fn out_flag_writes_json_next_to_the_text_output() {
    let path = std::env::temp_dir().join(format!("contig-out-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();

    let output = contig(&["relation", "1,0,0", "0,1,0", "0,0,0", "--out", path_str]);
    assert!(output.status.success());
    assert!(stdout(&output).ends_with(" = 0\n"));
    let body = std::fs::read_to_string(&path).unwrap();
    let parsed: contig::RelationJson = serde_json::from_str(&body).unwrap();
    assert_eq!(parsed.terms.len(), 3);

    let output = contig(&["verify", "theorem", "--max-shift", "0", "--out", path_str]);
    assert!(output.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let report: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(report["passed"], serde_json::Value::Bool(true));

    std::fs::remove_file(&path).ok();
}
