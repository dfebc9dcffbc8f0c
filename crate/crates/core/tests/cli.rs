//! The `chevcheck` binary: exit codes, determinism, and reports validated
//! against the published schema.

use std::process::{Command, Output};

use chevdef::report::{run_suite, Format, Suite, SuiteConfig};
use serde_json::Value;

fn chevcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevcheck")).args(args).output().expect("binary runs")
}

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, report: &Value) {
    let errors: Vec<String> = v.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{report}");
}

#[test]
fn check_dc_json() {
    let out = chevcheck(&["check-dc", "--group", "SL3", "--field", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&validator(), &report);
    let data = &report["records"][0]["data"];
    assert_eq!(data["sizes"]["UZ"], 12);
    assert_eq!(data["case"], "generic");
    assert_eq!(data["verdict"], true);
}

#[test]
fn exploratory_is_not_a_failure() {
    let out = chevcheck(&["check-dc", "--group", "Sp4", "--field", "2", "--root", "short", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["records"][0]["status"], "exploratory");
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("chevcheck-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("bad.json");
    std::fs::write(&config, r#"{ "dc_cases": ["SL3 F3 long", "XX9 F3 long"] }"#).unwrap();
    let out = chevcheck(&["run", "--suite", "dc", "--config", config.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid(&validator(), &report);
    assert_eq!(report["records"][1]["status"], "fail");

    assert_eq!(chevcheck(&["run", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(chevcheck(&["enumerate", "--group", "SL3", "--field", "6"]).status.code(), Some(2));
    std::fs::write(&config, r#"{ "unknown_field": 1 }"#).unwrap();
    assert_eq!(chevcheck(&["run", "--config", config.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_file_and_replay() {
    let path = std::env::temp_dir().join(format!("chevcheck-out-{}.json", std::process::id()));
    let args = ["check-adelic", "--primes", "7", "--mode", "PSL2", "--seed", "5", "--format", "json"];
    let first = chevcheck(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(chevcheck(&with_out).status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written.trim_end(), String::from_utf8(first.stdout).unwrap().trim_end());
    let report: Value = serde_json::from_str(&written).unwrap();
    assert_eq!(report["seed"], 5);
    assert_valid(&validator(), &report);
}

#[test]
fn suite_reports_match_schema() {
    let v = validator();
    let c = SuiteConfig {
        fields: vec![2, 3],
        groups: vec!["SL3".into(), "Sp4".into()],
        linear_groups: vec![],
        dc_cases: vec!["SL3 F2 long".into(), "Sp4 F3 exact".into(), "Sp4 F2 short".into()],
        ..SuiteConfig::default()
    };
    for suite in [Suite::Roots, Suite::Commutators, Suite::Dc, Suite::Width] {
        let r = run_suite(suite, &c).unwrap();
        let json: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_valid(&v, &json);
        assert_eq!(r.render(Format::Text), run_suite(suite, &c).unwrap().render(Format::Text));
    }
}

#[test]
fn config_seed_survives_without_flag() {
    let path = std::env::temp_dir().join(format!("chevcheck-seed-{}.json", std::process::id()));
    std::fs::write(&path, r#"{ "seed": 3 }"#).unwrap();
    let p = path.to_str().unwrap();
    let seed = |extra: &[&str]| {
        let mut args = vec!["run", "--suite", "roots", "--config", p, "--format", "json"];
        args.extend(extra);
        let report: Value = serde_json::from_slice(&chevcheck(&args).stdout).unwrap();
        report["seed"].clone()
    };
    assert_eq!(seed(&[]), 3);
    assert_eq!(seed(&["--seed", "9"]), 9);
    std::fs::remove_file(&path).unwrap();
}
