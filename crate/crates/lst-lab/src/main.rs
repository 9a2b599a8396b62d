//! `lst-lab`: simulation, verification and backtesting of LST liquidity on
//! AMMs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{backtest, mc_verify, required_returns, simulate, suitability, swap_quote};

#[derive(Parser)]
#[command(
    name = "lst-lab",
    version,
    about = "Liquidity-provision analysis for liquid staking token pools",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate required fee returns per family over a staking-rate grid.
    RequiredReturns(required_returns::Args),
    /// Check the closed-form expectations against Monte Carlo sampling.
    McVerify(mc_verify::Args),
    /// Replay a price path against a pool and record benchmark wealth.
    Simulate(simulate::Args),
    /// Replay historical files and write wealth plus classifications.
    Backtest(backtest::Args),
    /// Quote a single swap against a pool.
    SwapQuote(swap_quote::Args),
    /// Print which AMM families suit which LST pair types.
    Suitability(suitability::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::RequiredReturns(args) => required_returns::run(&args),
        Command::McVerify(args) => mc_verify::run(&args),
        Command::Simulate(args) => simulate::run(&args),
        Command::Backtest(args) => backtest::run(&args),
        Command::SwapQuote(args) => swap_quote::run(&args),
        Command::Suitability(args) => suitability::run(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
