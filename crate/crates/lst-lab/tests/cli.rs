//! End-to-end CLI checks: golden outputs, determinism, exit codes and flag
//! behavior.

use std::path::Path;
use std::process::{Command, Output};

fn lst_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lst-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path.as_ref())
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.as_ref().display()))
}

const OUTPUT_FILES: [&str; 6] = [
    "wealth.csv",
    "wealth.json",
    "classification_7d.csv",
    "classification_7d.json",
    "classification_30d.csv",
    "classification_30d.json",
];

#[test]
fn curve_backtest_reproduces_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = lst_lab(&[
        "backtest",
        "--kind",
        "curve",
        "--input",
        "curve-daily=tests/fixtures/curve_daily.csv",
        "--input",
        "staking-rates=tests/fixtures/staking_rates.csv",
        "--input",
        "reward-series=tests/fixtures/reward_series.csv",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in OUTPUT_FILES {
        let produced = read(dir.path().join(name));
        let golden = read(Path::new("tests/golden/curve").join(name));
        assert_eq!(produced, golden, "{name} differs from golden");
    }
}

#[test]
fn clmm_backtest_reproduces_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = lst_lab(&[
        "backtest",
        "--kind",
        "clmm",
        "--input",
        "uniswap-events=tests/fixtures/uniswap_events.csv",
        "--input",
        "staking-rates=tests/fixtures/staking_rates.csv",
        "--fee-rate",
        "0.0005",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in OUTPUT_FILES {
        let produced = read(dir.path().join(name));
        let golden = read(Path::new("tests/golden/clmm").join(name));
        assert_eq!(produced, golden, "{name} differs from golden");
    }
}

#[test]
fn missing_input_file_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = lst_lab(&[
        "backtest",
        "--kind",
        "curve",
        "--input",
        "curve-daily=tests/fixtures/does_not_exist.csv",
        "--input",
        "staking-rates=tests/fixtures/staking_rates.csv",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_violation_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "date,annualized_rate\n2023-01-01,not_a_number\n").unwrap();
    let out = lst_lab(&[
        "backtest",
        "--kind",
        "curve",
        "--input",
        "curve-daily=tests/fixtures/curve_daily.csv",
        "--input",
        &format!("staking-rates={}", bad.display()),
        "--output",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("annualized_rate"), "{stderr}");
    assert!(stderr.contains(":2:"), "{stderr}");
}

#[test]
fn window_flag_limits_the_classifications_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = lst_lab(&[
        "backtest",
        "--kind",
        "curve",
        "--input",
        "curve-daily=tests/fixtures/curve_daily.csv",
        "--input",
        "staking-rates=tests/fixtures/staking_rates.csv",
        "--window",
        "30",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(dir.path().join("classification_30d.csv").exists());
    assert!(!dir.path().join("classification_7d.csv").exists());
}

#[test]
fn unknown_flags_are_errors() {
    let out = lst_lab(&["suitability", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "required-returns",
        "mc-verify",
        "simulate",
        "backtest",
        "swap-quote",
        "suitability",
    ] {
        let out = lst_lab(&[sub, "--help"]);
        assert!(out.status.success(), "{sub} --help failed");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn mc_verify_is_byte_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| -> (Vec<u8>, String) {
        let path = dir.path().join(name);
        let out = lst_lab(&[
            "mc-verify",
            "--paths",
            "5000",
            "--seed",
            "7",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        (out.stdout, read(path))
    };
    let (stdout_a, json_a) = run("a.json");
    let (stdout_b, json_b) = run("b.json");
    assert_eq!(stdout_a, stdout_b);
    assert_eq!(json_a, json_b);
}

#[test]
fn swap_quote_prints_json_and_rejects_bad_pools() {
    let out = lst_lab(&[
        "swap-quote",
        "--family",
        "stableswap",
        "--reserves",
        "100,100",
        "--amp",
        "30",
        "--amount-in",
        "10",
    ]);
    assert!(out.status.success());
    let payload: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is valid JSON");
    let amount_out = payload["amount_out"].as_f64().unwrap();
    assert!((amount_out - 9.983474053728167).abs() < 1e-9);

    let bad = lst_lab(&[
        "swap-quote",
        "--family",
        "stableswap",
        "--reserves",
        "0,100",
        "--amp",
        "30",
        "--amount-in",
        "10",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn required_returns_zero_rate_rows_are_zero() {
    let out = lst_lab(&["required-returns", "--staking-rate", "0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(2) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[2].parse::<f64>().unwrap(), 0.0);
        assert_eq!(fields[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn rebase_rr_lvh_column_is_identically_zero() {
    let out = lst_lab(&[
        "required-returns",
        "--staking-rate",
        "0,0.01,0.04,0.08",
        "--family",
        "rebase",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(2) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], "rebase");
        assert_eq!(fields[2].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn simulate_zero_fee_cpmm_reaches_the_closed_form() {
    let out = lst_lab(&[
        "simulate",
        "--family",
        "cpmm",
        "--staking-rate",
        "0.04",
        "--sigma",
        "0",
        "--horizon",
        "1",
        "--steps",
        "365",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let last_data = text
        .lines()
        .rfind(|l| !l.starts_with('#') && !l.starts_with("time"))
        .unwrap();
    let fields: Vec<&str> = last_data.split(',').collect();
    let rr_lvs: f64 = fields[6].parse().unwrap();
    assert!((rr_lvs - (0.02f64.exp() - 1.0)).abs() < 1e-10);
}
