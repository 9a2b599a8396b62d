use std::path::PathBuf;
use std::process::ExitCode;

use lst_amm::{suitability, CounterAsset, LstKind};

use super::emit;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Output CSV path (stdout if omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(args: &Args) -> anyhow::Result<ExitCode> {
    let rows = [
        (LstKind::Rebase, CounterAsset::Underlying, "rebase", "underlying"),
        (
            LstKind::Rebase,
            CounterAsset::Lst(LstKind::Rebase),
            "rebase",
            "rebase",
        ),
        (LstKind::Reward, CounterAsset::Underlying, "reward", "underlying"),
        (
            LstKind::Reward,
            CounterAsset::Lst(LstKind::Reward),
            "reward",
            "reward",
        ),
    ];

    let mut out = String::new();
    out.push_str("# lst-lab suitability\n");
    out.push_str("lst_kind,counter_asset,suitable_amms,clmm_requires_rebalancing\n");
    for (lst, counter, lst_name, counter_name) in rows {
        let suggestions = suitability(lst, counter);
        let families: Vec<&str> = suggestions.iter().map(|s| s.family.name()).collect();
        let rebalancing = suggestions.iter().any(|s| s.requires_rebalancing);
        out.push_str(&format!(
            "{},{},{},{}\n",
            lst_name,
            counter_name,
            families.join(";"),
            rebalancing
        ));
    }
    emit(args.output.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}
