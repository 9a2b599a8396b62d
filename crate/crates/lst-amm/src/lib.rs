//! Swap math, price processes and liquidity-provider loss metrics for
//! liquid staking token pools.
//!
//! The crate covers four constant-function market maker families (constant
//! product, concentrated liquidity, Stableswap, Cryptoswap), the drifted
//! geometric Brownian motion that models reward-LST prices, closed-form and
//! Monte Carlo loss-versus-holding / loss-versus-staking analysis, and an
//! arbitrage-driven path simulator.
//!
//! All math is generic over the scalar type through [`num::Real`]; the
//! `*64` aliases at the crate root fix it to `f64`, the precision every
//! stated tolerance refers to.

// Validations use `!(x > 0)` rather than `x <= 0` so that NaN inputs are
// rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cfmm;
pub mod error;
pub mod metrics;
pub mod montecarlo;
pub mod num;
pub mod price;

pub use cfmm::{
    clmm_holdings, cpmm_holdings, cryptoswap_solve_d, stableswap_solve_d, suitability,
    ClmmPosition, CounterAsset, CurveFamily, FamilyKind, FeeMode, LstKind, PoolState, Suggestion,
    SwapQuote,
};
pub use error::AmmError;
pub use metrics::{
    benchmark_values, clmm_required_returns, clmm_symmetric_values, cpmm_expected_rr,
    cpmm_rr_lvh_closed, cpmm_rr_lvs_closed, fee_return, rebase_required_returns, required_returns,
    required_volume, BenchmarkValues, ClmmSymmetricValues, RequiredReturns,
};
pub use montecarlo::{estimate_expected_rr, simulate_lp_path, BenchmarkSeries, LpSimulation, McEstimate};
pub use num::Real;
pub use price::{
    ideal_path, rebase_schedule, sample_gbm, sample_gbm_stream, GbmParams, PricePath,
    RebaseSchedule, DAYS_PER_YEAR,
};

/// Double-precision aliases for the main domain types.
pub type PoolState64 = PoolState<f64>;
pub type SwapQuote64 = SwapQuote<f64>;
pub type CurveFamily64 = CurveFamily<f64>;
pub type ClmmPosition64 = ClmmPosition<f64>;
pub type GbmParams64 = GbmParams<f64>;
pub type PricePath64 = PricePath<f64>;
pub type RebaseSchedule64 = RebaseSchedule<f64>;
pub type BenchmarkValues64 = BenchmarkValues<f64>;
pub type RequiredReturns64 = RequiredReturns<f64>;
pub type ClmmSymmetricValues64 = ClmmSymmetricValues<f64>;
pub type McEstimate64 = McEstimate<f64>;
pub type BenchmarkSeries64 = BenchmarkSeries<f64>;
