//! Benchmark portfolio values and the returns liquidity providers need from
//! fees to match them.
//!
//! Three portfolios are compared, all valued in units of the underlying
//! token at external price `P(t)`:
//!
//! ```text
//! V_LP(t)   = x(t) P(t) + y(t)                  (the liquidity position)
//! V_HOLD(t) = x(0) P(t) + y(0)                  (holding the entry amounts)
//! V_LST(t)  = (x(0) + y(0)/P(0)) P(t)           (fully staked)
//! ```
//!
//! The required fee returns are the ratios minus one:
//! `rr_lvh = V_HOLD / V_LP - 1` and `rr_lvs = V_LST / V_LP - 1`.
//!
//! Closed forms are provided for constant-product pools under the drifted
//! GBM price process, for symmetric concentrated-liquidity ranges on the
//! ideal trajectory, and for pegged rebase pairs.

use crate::error::AmmError;
use crate::num::{real, Real};

/// The three benchmark portfolio values at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkValues<F> {
    pub v_lp: F,
    pub v_hold: F,
    pub v_lst: F,
    pub at_time: F,
}

/// Required fee returns against holding and against staking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RequiredReturns<F> {
    pub rr_lvh: F,
    pub rr_lvs: F,
}

/// Value the three benchmarks from entry holdings `(x0, y0)`, current
/// holdings `(x_t, y_t)` and the two prices.
pub fn benchmark_values<F: Real>(
    x0: F,
    y0: F,
    x_t: F,
    y_t: F,
    p0: F,
    p_t: F,
    at_time: F,
) -> Result<BenchmarkValues<F>, AmmError> {
    if !(p0 > F::zero()) || !(p_t > F::zero()) {
        return Err(AmmError::domain(format!(
            "prices must be positive, got P(0)={p0}, P(t)={p_t}"
        )));
    }
    Ok(BenchmarkValues {
        v_lp: x_t * p_t + y_t,
        v_hold: x0 * p_t + y0,
        v_lst: (x0 + y0 / p0) * p_t,
        at_time,
    })
}

/// `rr = benchmark / V_LP - 1` for both benchmarks.
pub fn required_returns<F: Real>(values: &BenchmarkValues<F>) -> Result<RequiredReturns<F>, AmmError> {
    if !(values.v_lp > F::zero()) {
        return Err(AmmError::domain(format!(
            "LP value must be positive, got {}",
            values.v_lp
        )));
    }
    Ok(RequiredReturns {
        rr_lvh: values.v_hold / values.v_lp - F::one(),
        rr_lvs: values.v_lst / values.v_lp - F::one(),
    })
}

/// Path-wise required return versus staking for a constant-product pool:
///
/// ```text
/// rr_lvs(t) = exp((r/2 - sigma^2/4) t + (sigma/2) B(t)) - 1
/// ```
pub fn cpmm_rr_lvs_closed<F: Real>(r: F, sigma: F, t: F, brownian: F) -> Result<F, AmmError> {
    check_horizon(t)?;
    let half = real::<F>(0.5);
    let quarter = real::<F>(0.25);
    let exponent = (half * r - quarter * sigma * sigma) * t + half * sigma * brownian;
    Ok(exponent.exp_m1())
}

/// Path-wise required return versus holding for a constant-product pool:
///
/// ```text
/// rr_lvh(t) = (exp(a) + exp(-a)) / 2 - 1,
/// a = (r/2 - sigma^2/4) t + (sigma/2) B(t)
/// ```
pub fn cpmm_rr_lvh_closed<F: Real>(r: F, sigma: F, t: F, brownian: F) -> Result<F, AmmError> {
    check_horizon(t)?;
    let half = real::<F>(0.5);
    let quarter = real::<F>(0.25);
    let exponent = (half * r - quarter * sigma * sigma) * t + half * sigma * brownian;
    Ok(half * (exponent.exp() + (-exponent).exp()) - F::one())
}

/// Expected required returns for a constant-product pool:
///
/// ```text
/// E[rr_lvh] = (exp((r/2 - sigma^2/8) t) + exp((-r/2 + 3 sigma^2/8) t)) / 2 - 1
/// E[rr_lvs] = exp((r/2 - sigma^2/8) t) - 1
/// ```
///
/// Returns `(E[rr_lvh], E[rr_lvs])`.
pub fn cpmm_expected_rr<F: Real>(r: F, sigma: F, t: F) -> Result<(F, F), AmmError> {
    check_horizon(t)?;
    let half = real::<F>(0.5);
    let eighth = real::<F>(0.125);
    let three_eighths = real::<F>(0.375);
    let s2 = sigma * sigma;
    let up_exponent = (half * r - eighth * s2) * t;
    let down = ((-(half * r) + three_eighths * s2) * t).exp();
    let e_lvh = half * (up_exponent.exp() + down) - F::one();
    let e_lvs = up_exponent.exp_m1();
    Ok((e_lvh, e_lvs))
}

/// Benchmark values of a symmetric concentrated-liquidity position.
///
/// The range is `[P(0) e^(-d), P(0) e^(rT + d)]`, symmetric in log space
/// around the drift from `P(0)` to `P(0) e^(rT)`, and the price is assumed
/// to follow the ideal trajectory and stay in range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClmmSymmetricValues<F> {
    pub v_lp: F,
    pub v_lst: F,
    /// HOLD rebalanced at entry to a 50-50 value split, the composition a
    /// symmetric position averages over the period.
    pub v_hold_adjusted: F,
}

pub fn clmm_symmetric_values<F: Real>(
    liquidity: F,
    p0: F,
    r: F,
    horizon: F,
    range_offset: F,
) -> Result<ClmmSymmetricValues<F>, AmmError> {
    if !(liquidity > F::zero()) || !(p0 > F::zero()) {
        return Err(AmmError::domain(
            "liquidity and initial price must be positive".to_string(),
        ));
    }
    if !(horizon > F::zero()) {
        return Err(AmmError::domain(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    if !(range_offset >= F::zero()) {
        return Err(AmmError::domain(format!(
            "range offset must be non-negative, got {range_offset}"
        )));
    }
    let half = real::<F>(0.5);
    let two = real::<F>(2.0);
    let scale = liquidity * p0.sqrt();
    let rt_half = half * r * horizon;
    let d_half = half * range_offset;
    let v_lp = scale * (two * rt_half.exp() - (rt_half - d_half).exp() - (-d_half).exp());
    let entry = two - (-rt_half - d_half).exp() - (-d_half).exp();
    let v_lst = scale * entry * (r * horizon).exp();
    let v_hold_adjusted = scale * half * entry * (F::one() + (r * horizon).exp());
    Ok(ClmmSymmetricValues {
        v_lp,
        v_lst,
        v_hold_adjusted,
    })
}

/// Required returns of a symmetric in-range concentrated-liquidity position.
/// Both are independent of the range width:
///
/// ```text
/// rr_lvh(T) = (exp(rT/2) + exp(-rT/2)) / 2 - 1
/// rr_lvs(T) = exp(rT/2) - 1
/// ```
pub fn clmm_required_returns<F: Real>(r: F, horizon: F) -> Result<RequiredReturns<F>, AmmError> {
    check_horizon(horizon)?;
    let half = real::<F>(0.5);
    let a = half * r * horizon;
    Ok(RequiredReturns {
        rr_lvh: half * (a.exp() + (-a).exp()) - F::one(),
        rr_lvs: a.exp_m1(),
    })
}

/// Required returns for a pegged rebase pair.
///
/// The pool splits rewards across half the capital, so no loss versus
/// holding occurs and
///
/// ```text
/// rr_lvh(t) = 0
/// rr_lvs(t) = (e^(rt) - 1) / (e^(rt) + 1)
/// ```
pub fn rebase_required_returns<F: Real>(r: F, t: F) -> Result<RequiredReturns<F>, AmmError> {
    check_horizon(t)?;
    let growth = (r * t).exp_m1();
    Ok(RequiredReturns {
        rr_lvh: F::zero(),
        rr_lvs: growth / (growth + real::<F>(2.0)),
    })
}

/// Fee return of a liquidity position: `volume * fee_rate / liquidity`.
///
/// For concentrated liquidity, `liquidity_in_pool` must be the in-range
/// liquidity only.
pub fn fee_return<F: Real>(volume: F, fee_rate: F, liquidity_in_pool: F) -> Result<F, AmmError> {
    if !(liquidity_in_pool > F::zero()) {
        return Err(AmmError::domain(format!(
            "liquidity must be positive, got {liquidity_in_pool}"
        )));
    }
    Ok(volume * fee_rate / liquidity_in_pool)
}

/// Trading volume needed to earn `required_return` at the given fee rate.
pub fn required_volume<F: Real>(
    required_return: F,
    fee_rate: F,
    liquidity_in_pool: F,
) -> Result<F, AmmError> {
    if !(fee_rate > F::zero()) {
        return Err(AmmError::domain(format!(
            "fee rate must be positive, got {fee_rate}"
        )));
    }
    Ok(required_return * liquidity_in_pool / fee_rate)
}

fn check_horizon<F: Real>(t: F) -> Result<(), AmmError> {
    if !(t >= F::zero()) || !t.is_finite() {
        return Err(AmmError::domain(format!(
            "time horizon must be non-negative, got {t}"
        )));
    }
    Ok(())
}
