use std::process::Command as Process;

use serde_json::Value;
use superreal_cli::{run, CliError, Command, Format, RunConfig};

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_superreal")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json_of(cfg: &RunConfig) -> Value {
    let mut cfg = cfg.clone();
    cfg.format = Format::Json;
    serde_json::from_str(&run(&cfg).unwrap().to_json().unwrap()).unwrap()
}

#[test]
fn verify_example_passes_and_validates() {
    let (code, out, _) = binary(&[
        "verify",
        "sl",
        "2",
        "1",
        "sigma1",
        "--p",
        "1",
        "--q",
        "1",
        "--odd-pairs",
        "1",
        "--samples",
        "100",
        "--seed",
        "42",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert!(schema().is_valid(&report));
    assert_eq!(report["summary"]["fail"], 0);
    assert_eq!(report["summary"]["pass"], 6);
}

#[test]
fn inapplicable_descriptor_is_a_usage_error() {
    let (code, _, err) = binary(&["verify", "sl", "2", "1", "sigma3"]);
    assert_eq!(code, 2);
    assert!(err.contains("m = n"), "{err}");
    let cfg = RunConfig::new(Command::Verify, "sl", 2, 1).descriptor("sigma3");
    assert!(matches!(run(&cfg), Err(CliError::Usage(_))));
}

#[test]
fn printed_xi2_is_flagged_and_exits_zero() {
    let (code, out, _) = binary(&["verify", "osp", "2", "2", "xi2", "--strict-printed", "--format", "json"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&out).unwrap();
    let anti = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "antilinearity").unwrap();
    assert_eq!(anti["status"], "flagged");
    assert!(anti["note"].is_string());
    assert_eq!(report["config"]["p"], 0);
}

#[test]
fn only_failures_decide_the_outcome() {
    let cfg = RunConfig::new(Command::Verify, "SL", 2, 1).descriptor("Sigma1").params(Some(1), Some(1));
    let mut report = run(&cfg).unwrap();
    assert!(report.passed());
    assert!(report.summary.flagged > 0, "flags alone keep the run passing");
    report.checks.push(superreal_core::Check::fail("injected", superreal_core::report::witness([("k", "v")])));
    report.summary.fail += 1;
    assert!(!report.passed());
}

#[test]
fn graded_algebra_with_self_real_generator_is_a_usage_error() {
    let (code, _, _) = binary(&["verify", "sl", "2", "1", "omega2", "--p", "1", "--q", "1", "--odd-selfreal", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn text_and_json_carry_the_same_checks() {
    let cfg = RunConfig::new(Command::Verify, "osp", 1, 2).descriptor("psi1").params(Some(1), Some(0));
    let report = run(&cfg).unwrap();
    let text = report.to_text();
    let json = json_of(&cfg);
    let names: Vec<&str> = json["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), report.checks.len());
    for name in names {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn fixed_basis_lists_a_full_real_basis() {
    let cfg = RunConfig::new(Command::FixedBasis, "sl", 1, 1).descriptor("omega3");
    let report = json_of(&cfg);
    assert!(schema().is_valid(&report));
    // (A ⊗ V)₀ for A = ℂ[θ, θ~]: 2·1 even + 2·2 odd slots
    assert_eq!(report["data"]["complex_dim"], 6);
    assert_eq!(report["data"]["vectors"].as_array().unwrap().len(), 6);

    let classical =
        json_of(&RunConfig { odd_pairs: 0, ..RunConfig::new(Command::FixedBasis, "sl", 1, 1).descriptor("sigma3") });
    assert_eq!(classical["data"]["vectors"].as_array().unwrap().len(), 1);

    let empty =
        json_of(&RunConfig { odd_pairs: 0, ..RunConfig::new(Command::FixedBasis, "sl", 1, 1).descriptor("omega3") });
    assert_eq!(empty["data"]["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn compact_scan_marks_the_expected_entries() {
    let report = json_of(&RunConfig::new(Command::CompactScan, "sl", 2, 1));
    assert!(schema().is_valid(&report));
    let entry = |name: &str| {
        report["data"]["entries"].as_array().unwrap().iter().find(|e| e["descriptor"] == name).unwrap().clone()
    };
    assert_eq!(entry("omega2(2,1)")["compact"], true);
    assert_eq!(entry("omega2(1,1)")["compact"], false);
    assert!(entry("omega2(1,1)")["indefinite_direction"].is_object());

    let osp = json_of(&RunConfig::new(Command::CompactScan, "osp", 2, 2));
    let compact = osp["data"]["compact_graded"].as_array().unwrap();
    assert!(compact.iter().any(|n| n.as_str().unwrap().starts_with("psi")));
}

#[test]
fn witness_examples() {
    for (m, n, d) in [(1, 1, "omega3"), (2, 2, "omega1")] {
        let report = json_of(&RunConfig::new(Command::Witness, "sl", m, n).descriptor(d));
        assert!(schema().is_valid(&report));
        assert_eq!(report["summary"]["pass"], 2, "{d}");
        assert!(report["data"]["witness"].is_string());
    }
    let (code, _, err) = binary(&["witness", "sl", "2", "1", "sigma1", "--p", "1", "--q", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("standard forms are representable"));
}

#[test]
fn same_seed_gives_identical_bytes() {
    let args = [
        "verify",
        "SL",
        "2",
        "2",
        "Omega2",
        "--p",
        "1",
        "--q",
        "2",
        "--samples",
        "10",
        "--seed",
        "5",
        "--format",
        "json",
    ];
    let (_, a, _) = binary(&args);
    let (_, b, _) = binary(&args);
    assert_eq!(a, b);
    let (_, c, _) = binary(&[
        "verify",
        "SL",
        "2",
        "2",
        "Omega2",
        "--p",
        "1",
        "--q",
        "2",
        "--samples",
        "10",
        "--seed",
        "6",
        "--format",
        "json",
    ]);
    assert!(schema().is_valid(&serde_json::from_str::<Value>(&c).unwrap()));
}
