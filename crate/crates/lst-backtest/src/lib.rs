//! File-driven historical replay of LST liquidity provision.
//!
//! Ingests daily pool snapshots, swap-event streams and staking-rate series
//! from CSV, replays the wealth of the benchmark portfolios (LP, LP plus
//! rewards, HOLD, LST, staker), and classifies each day by whether fees kept
//! up with holding and staking.

// Validations use `!(x > 0)` rather than `x <= 0` so that NaN inputs are
// rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clmm;
pub mod curve;
pub mod error;
pub mod ingest;
pub mod output;
pub mod series;

pub use clmm::{
    clmm_backtest, daily_prices_from_events, ClmmBacktestConfig, ClmmBacktestOutcome, DailyPrice,
    RangeReset,
};
pub use curve::curve_lp_wealth;
pub use error::BacktestError;
pub use ingest::{
    ingest, BacktestBundle, CurveSnapshot, FileReport, IngestOptions, RewardPoint, SchemaKind,
    StakingRate, SwapEvent,
};
pub use series::{
    moving_average_classification, ClassifyConfig, Label, MaClassification, WealthSeries,
};
