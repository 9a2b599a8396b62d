use std::path::PathBuf;
use std::process::ExitCode;

use lst_amm::{estimate_expected_rr, McEstimate};
use lst_backtest::output::{format_number, to_json_string};
use serde_json::json;

use super::emit;

/// Reject the run when an estimate strays this many standard errors from
/// its closed form.
const Z_LIMIT: f64 = 4.0;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Annualized staking rate.
    #[arg(long = "staking-rate", default_value_t = 0.04)]
    pub staking_rate: f64,

    /// Annualized price volatility.
    #[arg(long, default_value_t = 0.05)]
    pub sigma: f64,

    /// Time horizon in years.
    #[arg(long, default_value_t = 1.0)]
    pub horizon: f64,

    /// Number of Monte Carlo paths.
    #[arg(long, default_value_t = 100_000)]
    pub paths: usize,

    /// Random seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Optional JSON report path.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn estimate_json(name: &str, est: &McEstimate<f64>) -> serde_json::Value {
    json!({
        "metric": name,
        "mean": est.mean,
        "std_error": est.std_error,
        "n_paths": est.n_paths,
        "closed_form": est.closed_form,
        "z_score": est.z_score,
    })
}

pub fn run(args: &Args) -> anyhow::Result<ExitCode> {
    let (lvh, lvs) = estimate_expected_rr(
        args.staking_rate,
        args.sigma,
        args.horizon,
        args.paths,
        args.seed,
    )?;

    let config_line = format!(
        "lst-lab mc-verify --staking-rate {} --sigma {} --horizon {} --paths {} --seed {}",
        args.staking_rate, args.sigma, args.horizon, args.paths, args.seed
    );
    let passed = lvh.z_score.abs() <= Z_LIMIT && lvs.z_score.abs() <= Z_LIMIT;

    let mut report = String::new();
    report.push_str(&format!("# {config_line}\n"));
    report.push_str("metric,mean,std_error,closed_form,z_score\n");
    for (name, est) in [("rr_lvh", &lvh), ("rr_lvs", &lvs)] {
        report.push_str(&format!(
            "{},{},{},{},{}\n",
            name,
            format_number(est.mean),
            format_number(est.std_error),
            format_number(est.closed_form),
            format_number(est.z_score)
        ));
    }
    report.push_str(if passed { "result,pass\n" } else { "result,fail\n" });
    print!("{report}");

    if let Some(path) = &args.output {
        let value = json!({
            "config": config_line,
            "estimates": [estimate_json("rr_lvh", &lvh), estimate_json("rr_lvs", &lvs)],
            "z_limit": Z_LIMIT,
            "passed": passed,
        });
        emit(Some(path), &to_json_string(&value))?;
    }

    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
