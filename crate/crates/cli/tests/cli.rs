use std::process::{Command, Output};

use serde_json::Value;

fn wcv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcv"))
        .args(args)
        .env_remove("WCV_SEED")
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn validate(schema: &str, doc: &str) {
    let path = format!("{}/../core/schemas/{schema}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let doc: Value = serde_json::from_str(doc).unwrap();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn derive_prints_stage_trace_and_cubic() {
    let o = wcv(&["derive", "--case", "JKTI", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.trim() == "XYZ + X + Y + 1 = 0"), "{text}");
    for stage in ["Stokes matrices:", "closure equations:", "elimination:", "change of variables:"] {
        assert!(text.contains(stage), "missing {stage}");
    }
}

#[test]
fn directions_over_common_denominator() {
    let o = wcv(&["directions", "--case", "JKTIVb"]);
    assert_eq!(o.status.code(), Some(0));
    let want: Vec<String> = (1..=12).map(|k| format!("{k}*pi/6")).collect();
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), want);
    let json = stdout(&wcv(&["directions", "--case", "jktv", "--format", "json"]));
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["directions"], serde_json::json!(["1*pi/2", "2*pi/2", "3*pi/2"]));
}

#[test]
fn verify_all_passes_in_case_order() {
    let o = wcv(&["verify", "--case", "all", "--trials", "100", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let cases: Vec<&str> = text.lines().skip(1).take(6).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(cases, ["JKTVI", "JKTV", "JKTIVa", "JKTIVb", "JKTII", "JKTI"]);
    assert!(!text.contains("FAIL"));
    assert!(text.ends_with("seed 42, 100 trials per case\n"));
}

#[test]
fn verify_defaults_to_all_cases() {
    let o = wcv(&["verify", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["derive", "--case", "all", "--format", "json"][..],
        &["verify", "--trials", "20", "--seed", "9", "--format", "json"][..],
        &["derive", "--case", "JKTVI", "--format", "latex"][..],
    ] {
        assert_eq!(wcv(args).stdout, wcv(args).stdout, "{args:?}");
    }
}

#[test]
fn seed_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_wcv"))
        .args(["verify", "--case", "JKTI", "--trials", "2"])
        .env("WCV_SEED", "1234")
        .output()
        .unwrap();
    assert!(stdout(&o).ends_with("seed 1234, 2 trials per case\n"));
    let flag = Command::new(env!("CARGO_BIN_EXE_wcv"))
        .args(["verify", "--case", "JKTI", "--trials", "2", "--seed", "5"])
        .env("WCV_SEED", "1234")
        .output()
        .unwrap();
    assert!(stdout(&flag).ends_with("seed 5, 2 trials per case\n"));
}

#[test]
fn json_outputs_match_schemas() {
    validate("case_report", &stdout(&wcv(&["derive", "--case", "JKTII", "--format", "json"])));
    let all: Value = serde_json::from_str(&stdout(&wcv(&["derive", "--case", "all", "--format", "json"]))).unwrap();
    for report in all.as_array().unwrap() {
        validate("case_report", &report.to_string());
    }
    validate("case_spec", &stdout(&wcv(&["dump-spec", "--case", "JKTIVb", "--format", "json"])));
    validate("verify_report", &stdout(&wcv(&["verify", "--trials", "2", "--format", "json"])));
    validate("verify_report", &stdout(&wcv(&["verify", "--case", "JKTV", "--trials", "2", "--format", "json"])));
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("wcv-cli-test-{}.txt", std::process::id()));
    let o = wcv(&["directions", "--case", "JKTV", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1*pi/2\n2*pi/2\n3*pi/2\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["derive"][..],
        &["dump-spec"][..],
        &["derive", "--case", "JKTVII"][..],
        &["verify", "--trials", "0"][..],
        &["derive", "--case", "JKTI", "--format", "pdf"][..],
        &["dump-spec", "--case", "JKTI", "--format", "latex"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(wcv(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_one() {
    let o = wcv(&["derive", "--case", "JKTI", "--output", "/nonexistent-dir/x.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("writing"));
}
