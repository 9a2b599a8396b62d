//! Daily replay of a Curve pool from snapshot data.

use lst_amm::rebase_schedule;

use crate::error::BacktestError;
use crate::ingest::{rate_on, CurveSnapshot, StakingRate};
use crate::series::WealthSeries;

/// Build the benchmark wealth series from daily pool snapshots.
///
/// The LP series is the value of a fixed LP-token holding (trading fees are
/// already inside the pool value); `lp_plus_rewards` adds the cumulative
/// protocol-token rewards. HOLD starts from the entry-day pool composition
/// and LST from the fully staked equivalent; for `rebase` pools both have
/// their LST balances grown by the daily rebase factor derived from the
/// staking-rate series. The staker series compounds the reference rate
/// alone. Everything is normalized to an initial capital of one underlying
/// unit.
pub fn curve_lp_wealth(
    snapshots: &[CurveSnapshot],
    staking_rates: &[StakingRate],
    rebase: bool,
) -> Result<WealthSeries, BacktestError> {
    if snapshots.len() < 2 {
        return Err(BacktestError::Domain(format!(
            "need at least 2 snapshots, got {}",
            snapshots.len()
        )));
    }
    for w in snapshots.windows(2) {
        if w[1].date != w[0].date + chrono::Days::new(1) {
            return Err(BacktestError::MissingDays {
                file: "snapshots".to_string(),
                missing: vec![w[0].date + chrono::Days::new(1)],
            });
        }
    }

    // Per-day reference rates for days 1..n (the growth into each day).
    let mut rates = Vec::with_capacity(snapshots.len() - 1);
    for s in &snapshots[1..] {
        let rate = rate_on(staking_rates, s.date).ok_or_else(|| {
            BacktestError::Misaligned(format!("no staking rate for {}", s.date))
        })?;
        rates.push(rate);
    }
    // Cumulative reference growth, 1 at the entry day.
    let reference = rebase_schedule(&rates)?.compounded();

    let value_per_token =
        |s: &CurveSnapshot| (s.reserve_0 * s.lst_price + s.reserve_1) / s.lp_token_supply;

    let entry = &snapshots[0];
    let vpt0 = value_per_token(entry);
    let tokens_held = 1.0 / vpt0;
    // Entry composition of one unit of capital: the pro-rata pool share.
    let pool_share = tokens_held / entry.lp_token_supply;
    let x0 = entry.reserve_0 * pool_share;
    let y0 = entry.reserve_1 * pool_share;
    let p0 = entry.lst_price;
    let staked_units = x0 + y0 / p0;

    let n = snapshots.len();
    let mut dates = Vec::with_capacity(n);
    let mut lp = Vec::with_capacity(n);
    let mut lp_plus_rewards = Vec::with_capacity(n);
    let mut hold = Vec::with_capacity(n);
    let mut lst = Vec::with_capacity(n);
    let mut staker = Vec::with_capacity(n);
    let mut cumulative_rewards = 0.0;

    for (i, s) in snapshots.iter().enumerate() {
        let p = s.lst_price;
        // Balance growth of rebasing LST legs; 1 for reward pools.
        let growth = if rebase { reference[i] } else { 1.0 };
        dates.push(s.date);
        let lp_value = value_per_token(s) / vpt0;
        lp.push(lp_value);
        if i > 0 {
            cumulative_rewards += s.crv_reward_per_lp_token * tokens_held;
        }
        lp_plus_rewards.push(lp_value + cumulative_rewards);
        hold.push(x0 * growth * p + y0);
        lst.push(staked_units * growth * p);
        staker.push(reference[i]);
    }

    // Division by the entry value leaves exact ones at index 0.
    let series = WealthSeries {
        dates,
        lp,
        lp_plus_rewards,
        hold,
        lst,
        staker,
    };
    series.validate()?;
    Ok(series)
}
