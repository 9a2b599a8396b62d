use std::process::ExitCode;

use clap::ValueEnum;
use lst_amm::{ClmmPosition, CurveFamily, FeeMode, PoolState, SwapQuote};
use lst_backtest::output::to_json_string;
use serde_json::json;

use super::parse_grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuoteFamily {
    Cpmm,
    Clmm,
    Stableswap,
    Cryptoswap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FeeModeArg {
    /// Fees stay in the pool reserves (Curve style).
    Pool,
    /// Fees accrue outside the pool (Uniswap style).
    Separate,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Pool family.
    #[arg(long, value_enum)]
    pub family: QuoteFamily,

    /// Pool reserves as x,y (ignored for clmm, derived from the position).
    #[arg(long)]
    pub reserves: Option<String>,

    /// Swap input amount.
    #[arg(long = "amount-in")]
    pub amount_in: f64,

    /// Input token index.
    #[arg(long = "token-in", default_value_t = 0)]
    pub token_in: usize,

    /// Output token index.
    #[arg(long = "token-out", default_value_t = 1)]
    pub token_out: usize,

    /// Fee charged on the input amount.
    #[arg(long = "fee-rate", default_value_t = 0.0)]
    pub fee_rate: f64,

    /// Where the fee accrues.
    #[arg(long = "fee-mode", value_enum, default_value_t = FeeModeArg::Pool)]
    pub fee_mode: FeeModeArg,

    /// Stableswap/Cryptoswap amplification.
    #[arg(long, default_value_t = 30.0)]
    pub amp: f64,

    /// Cryptoswap gamma.
    #[arg(long, default_value_t = 0.01)]
    pub gamma: f64,

    /// Concentrated position liquidity.
    #[arg(long, default_value_t = 100.0)]
    pub liquidity: f64,

    /// Concentrated position lower price bound.
    #[arg(long = "lower-price", default_value_t = 0.9975)]
    pub lower_price: f64,

    /// Concentrated position upper price bound.
    #[arg(long = "upper-price", default_value_t = 1.0075)]
    pub upper_price: f64,

    /// Current price for deriving concentrated position reserves.
    #[arg(long, default_value_t = 1.0)]
    pub price: f64,
}

pub fn run(args: &Args) -> anyhow::Result<ExitCode> {
    let fee_mode = match args.fee_mode {
        FeeModeArg::Pool => FeeMode::FeesToPool,
        FeeModeArg::Separate => FeeMode::FeesAccruedSeparately,
    };
    let reserves = || -> anyhow::Result<Vec<f64>> {
        let raw = args
            .reserves
            .as_deref()
            .ok_or_else(|| anyhow::anyhow!("--reserves x,y is required for this family"))?;
        let values = parse_grid(raw)?;
        anyhow::ensure!(values.len() == 2, "--reserves must list exactly 2 amounts");
        Ok(values)
    };

    let pool = match args.family {
        QuoteFamily::Cpmm => PoolState::new(
            reserves()?,
            args.fee_rate,
            fee_mode,
            CurveFamily::ConstantProduct,
        )?,
        QuoteFamily::Stableswap => PoolState::new(
            reserves()?,
            args.fee_rate,
            fee_mode,
            CurveFamily::Stableswap {
                amp: args.amp,
                n_tokens: 2,
            },
        )?,
        QuoteFamily::Cryptoswap => PoolState::new(
            reserves()?,
            args.fee_rate,
            fee_mode,
            CurveFamily::Cryptoswap {
                amp: args.amp,
                gamma: args.gamma,
            },
        )?,
        QuoteFamily::Clmm => {
            let position = ClmmPosition::new(args.liquidity, args.lower_price, args.upper_price)?;
            PoolState::clmm_at_price(position, args.price, args.fee_rate, fee_mode)?
        }
    };

    let quote: SwapQuote<f64> = pool.swap(args.token_in, args.token_out, args.amount_in)?;
    let value = json!({
        "amount_in": quote.amount_in,
        "amount_out": quote.amount_out,
        "fee_paid": quote.fee_paid,
        "new_reserves": quote.new_reserves,
        "spot_price_after": quote.spot_price_after,
    });
    print!("{}", to_json_string(&value));
    Ok(ExitCode::SUCCESS)
}
