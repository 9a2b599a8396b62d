use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::ValueEnum;
use lst_backtest::output::{
    classification_to_csv, classification_to_json, wealth_to_csv, wealth_to_json,
};
use lst_backtest::{
    clmm_backtest, curve_lp_wealth, daily_prices_from_events, ingest,
    moving_average_classification, ClassifyConfig, ClmmBacktestConfig, IngestOptions, SchemaKind,
    WealthSeries,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PoolKind {
    /// Snapshot-valued pool (Curve style data).
    Curve,
    /// Event-driven concentrated-liquidity pool (Uniswap v3 style data).
    Clmm,
}

impl PoolKind {
    fn name(&self) -> &'static str {
        match self {
            PoolKind::Curve => "curve",
            PoolKind::Clmm => "clmm",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Pool kind to replay.
    #[arg(long, value_enum)]
    pub kind: PoolKind,

    /// Input file as schema=path; schemas: curve-daily, uniswap-events,
    /// staking-rates, reward-series. Repeatable.
    #[arg(long = "input", required = true)]
    pub inputs: Vec<String>,

    /// Output directory for the result files.
    #[arg(long)]
    pub output: PathBuf,

    /// Treat the LST as rebasing (adjusts HOLD and LST daily).
    #[arg(long, default_value_t = false)]
    pub rebase: bool,

    /// Pool fee tier for event-driven fee accrual.
    #[arg(long = "fee-rate", default_value_t = 0.0005)]
    pub fee_rate: f64,

    /// Classification window; both 7 and 30 are written when omitted.
    #[arg(long)]
    pub window: Option<usize>,

    /// Reject out-of-order input rows instead of sorting them.
    #[arg(long, default_value_t = false)]
    pub strict: bool,

    /// Re-center the range immediately when the price leaves it.
    #[arg(long = "recenter-on-exit", default_value_t = false)]
    pub recenter_on_exit: bool,

    /// Flat wealth deduction per monthly rebalance.
    #[arg(long = "gas-cost", default_value_t = 0.0)]
    pub gas_cost: f64,
}

fn parse_inputs(raw: &[String]) -> anyhow::Result<Vec<(PathBuf, SchemaKind)>> {
    raw.iter()
        .map(|spec| {
            let (schema, path) = spec
                .split_once('=')
                .with_context(|| format!("--input '{spec}' must be schema=path"))?;
            let kind = match schema {
                "curve-daily" => SchemaKind::CurveDaily,
                "uniswap-events" => SchemaKind::UniswapEvents,
                "staking-rates" => SchemaKind::StakingRates,
                "reward-series" => SchemaKind::RewardSeries,
                other => anyhow::bail!(
                    "unknown schema '{other}' (expected curve-daily, uniswap-events, staking-rates or reward-series)"
                ),
            };
            Ok((PathBuf::from(path), kind))
        })
        .collect()
}

pub fn run(args: &Args) -> anyhow::Result<ExitCode> {
    if let Some(w) = args.window {
        anyhow::ensure!(w == 7 || w == 30, "--window must be 7 or 30");
    }
    let inputs = parse_inputs(&args.inputs)?;
    let bundle = ingest(&inputs, IngestOptions {
        strict: args.strict,
    })?;
    for report in &bundle.reports {
        println!("{report}");
    }
    for warning in &bundle.warnings {
        eprintln!("warning: {warning}");
    }

    let rates = bundle
        .staking_rates
        .as_deref()
        .context("a staking-rates input is required")?;

    let series: WealthSeries = match args.kind {
        PoolKind::Curve => {
            let snapshots = bundle
                .curve_daily
                .as_deref()
                .context("kind curve needs an --input curve-daily=... file")?;
            curve_lp_wealth(snapshots, rates, args.rebase)?
        }
        PoolKind::Clmm => {
            let events = bundle
                .events
                .as_deref()
                .context("kind clmm needs an --input uniswap-events=... file")?;
            let prices = daily_prices_from_events(events)?;
            let config = ClmmBacktestConfig {
                fee_rate: args.fee_rate,
                recenter_on_range_exit: args.recenter_on_exit,
                gas_cost_per_rebalance: args.gas_cost,
                ..ClmmBacktestConfig::default()
            };
            let outcome = clmm_backtest(events, &prices, rates, &config)?;
            if outcome.skipped_events > 0 {
                eprintln!(
                    "warning: {} event(s) skipped for zero active liquidity",
                    outcome.skipped_events
                );
            }
            if outcome.out_of_range_events > 0 {
                eprintln!(
                    "warning: {} event(s) outside the covered date range",
                    outcome.out_of_range_events
                );
            }
            for reset in &outcome.resets {
                println!(
                    "reset {}: range [{}, {}]",
                    reset.date, reset.lower_price, reset.upper_price
                );
            }
            outcome.series
        }
    };

    let config_line = format!(
        "lst-lab backtest --kind {} --rebase {} --fee-rate {} --strict {} --recenter-on-exit {} --gas-cost {} --inputs {}",
        args.kind.name(),
        args.rebase,
        args.fee_rate,
        args.strict,
        args.recenter_on_exit,
        args.gas_cost,
        args.inputs.join(" "),
    );

    std::fs::create_dir_all(&args.output)
        .with_context(|| format!("creating {}", args.output.display()))?;
    let write = |name: &str, contents: String| -> anyhow::Result<()> {
        let path = args.output.join(name);
        std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
        Ok(())
    };

    write("wealth.csv", wealth_to_csv(&series, &config_line))?;
    write("wealth.json", wealth_to_json(&series, &config_line))?;

    let windows: Vec<usize> = match args.window {
        Some(w) => vec![w],
        None => vec![7, 30],
    };
    for window in windows {
        let classification =
            moving_average_classification(&series, window, ClassifyConfig::default())?;
        let line = format!("{config_line} --window {window}");
        write(
            &format!("classification_{window}d.csv"),
            classification_to_csv(&classification, &line),
        )?;
        write(
            &format!("classification_{window}d.json"),
            classification_to_json(&classification, &line),
        )?;
    }

    Ok(ExitCode::SUCCESS)
}
