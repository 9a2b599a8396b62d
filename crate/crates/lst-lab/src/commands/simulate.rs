use std::path::PathBuf;
use std::process::ExitCode;

use clap::ValueEnum;
use lst_amm::{
    ideal_path, sample_gbm, simulate_lp_path, ClmmPosition, CurveFamily, FeeMode, GbmParams,
    PoolState, PricePath,
};
use lst_backtest::output::format_number;

use super::emit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PoolFamily {
    Cpmm,
    Clmm,
    Stableswap,
    Cryptoswap,
}

impl PoolFamily {
    fn name(&self) -> &'static str {
        match self {
            PoolFamily::Cpmm => "cpmm",
            PoolFamily::Clmm => "clmm",
            PoolFamily::Stableswap => "stableswap",
            PoolFamily::Cryptoswap => "cryptoswap",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Pool family to simulate.
    #[arg(long, value_enum, default_value_t = PoolFamily::Cpmm)]
    pub family: PoolFamily,

    /// Annualized staking rate (price drift).
    #[arg(long = "staking-rate", default_value_t = 0.04)]
    pub staking_rate: f64,

    /// Annualized price volatility; zero replays the ideal trajectory.
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,

    /// Time horizon in years.
    #[arg(long, default_value_t = 1.0)]
    pub horizon: f64,

    /// Number of path steps.
    #[arg(long, default_value_t = 365)]
    pub steps: usize,

    /// Random seed (used when sigma > 0).
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Arbitrage friction band half-width (the pool fee).
    #[arg(long = "fee-rate", default_value_t = 0.0)]
    pub fee_rate: f64,

    /// Initial LST price in underlying units.
    #[arg(long = "initial-price", default_value_t = 1.0)]
    pub initial_price: f64,

    /// Stableswap/Cryptoswap amplification.
    #[arg(long, default_value_t = 30.0)]
    pub amp: f64,

    /// Cryptoswap gamma.
    #[arg(long, default_value_t = 0.01)]
    pub gamma: f64,

    /// Concentrated range: log-price margin around the expected drift.
    #[arg(long = "range-offset", default_value_t = 0.01)]
    pub range_offset: f64,

    /// Output CSV path (stdout if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn build_pool(args: &Args) -> anyhow::Result<PoolState<f64>> {
    let p0 = args.initial_price;
    let fee = args.fee_rate;
    // One unit of capital, half in each token by value at entry.
    let x0 = 0.5 / p0;
    let y0 = 0.5;
    let pool = match args.family {
        PoolFamily::Cpmm => PoolState::new(
            vec![x0, y0],
            fee,
            FeeMode::FeesToPool,
            CurveFamily::ConstantProduct,
        )?,
        PoolFamily::Clmm => {
            let lower = p0 * (-args.range_offset).exp();
            let upper = p0 * (args.staking_rate * args.horizon + args.range_offset).exp();
            let liquidity = ClmmPosition::liquidity_for_value(1.0, p0, lower, upper)?;
            let position = ClmmPosition::new(liquidity, lower, upper)?;
            PoolState::clmm_at_price(position, p0, fee, FeeMode::FeesAccruedSeparately)?
        }
        PoolFamily::Stableswap => {
            anyhow::ensure!(
                (p0 - 1.0).abs() < 1e-12,
                "stableswap simulation starts from a balanced pool; --initial-price must be 1"
            );
            PoolState::new(
                vec![x0, y0],
                fee,
                FeeMode::FeesToPool,
                CurveFamily::Stableswap {
                    amp: args.amp,
                    n_tokens: 2,
                },
            )?
        }
        PoolFamily::Cryptoswap => {
            anyhow::ensure!(
                (p0 - 1.0).abs() < 1e-12,
                "cryptoswap simulation starts from a balanced pool; --initial-price must be 1"
            );
            PoolState::new(
                vec![x0, y0],
                fee,
                FeeMode::FeesToPool,
                CurveFamily::Cryptoswap {
                    amp: args.amp,
                    gamma: args.gamma,
                },
            )?
        }
    };
    Ok(pool)
}

pub fn run(args: &Args) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(args.steps > 0, "--steps must be positive");
    let pool = build_pool(args)?;
    let params = GbmParams::new(args.initial_price, args.staking_rate, args.sigma)?;
    let times = PricePath::uniform_grid(args.horizon, args.steps)?;
    let path = if args.sigma == 0.0 {
        ideal_path(&params, &times)?
    } else {
        sample_gbm(&params, &times, args.seed)?
    };
    let sim = simulate_lp_path(&pool, &path)?;

    let config_line = format!(
        "lst-lab simulate --family {} --staking-rate {} --sigma {} --horizon {} --steps {} --seed {} --fee-rate {} --initial-price {} --amp {} --gamma {} --range-offset {}",
        args.family.name(),
        args.staking_rate,
        args.sigma,
        args.horizon,
        args.steps,
        args.seed,
        args.fee_rate,
        args.initial_price,
        args.amp,
        args.gamma,
        args.range_offset,
    );

    let mut out = String::new();
    out.push_str(&format!("# {config_line}\n"));
    out.push_str("time,price,v_lp,v_hold,v_lst,rr_lvh,rr_lvs,pool_spot\n");
    let series = &sim.series;
    for i in 0..series.times.len() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            format_number(series.times[i]),
            format_number(series.prices[i]),
            format_number(series.lp[i]),
            format_number(series.hold[i]),
            format_number(series.lst[i]),
            format_number(series.hold[i] / series.lp[i] - 1.0),
            format_number(series.lst[i] / series.lp[i] - 1.0),
            format_number(sim.pool_spot[i]),
        ));
    }
    out.push_str(&format!(
        "# arbitrageur_profit,{}\n",
        format_number(sim.arbitrageur_profit)
    ));
    emit(args.output.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}
