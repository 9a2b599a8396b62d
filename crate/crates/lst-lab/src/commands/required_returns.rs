use std::path::PathBuf;
use std::process::ExitCode;

use clap::ValueEnum;
use lst_amm::{clmm_required_returns, cpmm_expected_rr, rebase_required_returns};
use lst_backtest::output::format_number;

use super::{emit, parse_grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cpmm,
    Clmm,
    Rebase,
}

impl Family {
    fn name(&self) -> &'static str {
        match self {
            Family::Cpmm => "cpmm",
            Family::Clmm => "clmm",
            Family::Rebase => "rebase",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Comma-separated annualized staking rates, e.g. 0.0,0.02,0.04.
    #[arg(long = "staking-rate")]
    pub staking_rate: String,

    /// Time horizon in years.
    #[arg(long, default_value_t = 1.0)]
    pub horizon: f64,

    /// Price volatility used for the constant-product expectations.
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,

    /// Families to tabulate (defaults to all).
    #[arg(long = "family", value_enum)]
    pub families: Vec<Family>,

    /// Output CSV path (stdout if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(args: &Args) -> anyhow::Result<ExitCode> {
    let grid = parse_grid(&args.staking_rate)?;
    let families = if args.families.is_empty() {
        vec![Family::Cpmm, Family::Clmm, Family::Rebase]
    } else {
        args.families.clone()
    };

    let family_names: Vec<&str> = families.iter().map(|f| f.name()).collect();
    let config_line = format!(
        "lst-lab required-returns --staking-rate {} --horizon {} --sigma {} --family {}",
        args.staking_rate,
        args.horizon,
        args.sigma,
        family_names.join(",")
    );

    let mut out = String::new();
    out.push_str(&format!("# {config_line}\n"));
    out.push_str("family,staking_rate,rr_lvh,rr_lvs\n");
    for family in &families {
        for &r in &grid {
            let (lvh, lvs) = match family {
                Family::Cpmm => cpmm_expected_rr(r, args.sigma, args.horizon)?,
                Family::Clmm => {
                    let rr = clmm_required_returns(r, args.horizon)?;
                    (rr.rr_lvh, rr.rr_lvs)
                }
                Family::Rebase => {
                    let rr = rebase_required_returns(r, args.horizon)?;
                    (rr.rr_lvh, rr.rr_lvs)
                }
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                family.name(),
                format_number(r),
                format_number(lvh),
                format_number(lvs)
            ));
        }
    }
    emit(args.output.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}
