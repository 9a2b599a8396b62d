//! Stochastic verification of the closed-form expectations, and a path
//! simulator that keeps a pool aligned with an external price series through
//! arbitrage.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cfmm::{cpmm, CurveFamily, PoolState};
use crate::error::AmmError;
use crate::metrics::{self};
use crate::num::{compensated_sum, real, Real};
use crate::price::PricePath;

/// A Monte Carlo estimate next to its closed-form target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate<F> {
    pub mean: F,
    pub std_error: F,
    pub n_paths: usize,
    pub closed_form: F,
    /// `(mean - closed_form) / std_error`; zero when the estimate is exact.
    pub z_score: F,
}

impl<F: Real> McEstimate<F> {
    fn from_samples(values: &[F], closed_form: F) -> Self {
        let n = values.len();
        let n_f = real::<F>(n as f64);
        let mean = compensated_sum(values.iter().copied()) / n_f;
        let ss = compensated_sum(values.iter().map(|&v| (v - mean) * (v - mean)));
        let variance = ss / real::<F>((n - 1) as f64);
        let std_error = (variance / n_f).sqrt();
        let z_score = if std_error > F::zero() {
            (mean - closed_form) / std_error
        } else {
            F::zero()
        };
        McEstimate {
            mean,
            std_error,
            n_paths: n,
            closed_form,
            z_score,
        }
    }

    fn exact(value: F, n_paths: usize, closed_form: F) -> Self {
        McEstimate {
            mean: value,
            std_error: F::zero(),
            n_paths,
            closed_form,
            z_score: F::zero(),
        }
    }
}

/// Estimate the expected constant-product required returns by sampling the
/// terminal Brownian value `B(t) ~ Normal(0, t)` per path and averaging the
/// path-wise closed forms.
///
/// Returns `(loss-versus-holding, loss-versus-staking)` estimates, each with
/// a z-score against the corresponding expectation formula. Path `i` draws
/// from substream `i` of the seeded generator, so results are independent of
/// evaluation order.
pub fn estimate_expected_rr<F: Real>(
    r: F,
    sigma: F,
    t: F,
    n_paths: usize,
    seed: u64,
) -> Result<(McEstimate<F>, McEstimate<F>), AmmError> {
    if n_paths < 2 {
        return Err(AmmError::domain(format!(
            "need at least 2 paths, got {n_paths}"
        )));
    }
    let (closed_lvh, closed_lvs) = metrics::cpmm_expected_rr(r, sigma, t)?;

    if sigma == F::zero() || t == F::zero() {
        // Deterministic path: every sample is the closed-form value.
        let lvh = metrics::cpmm_rr_lvh_closed(r, sigma, t, F::zero())?;
        let lvs = metrics::cpmm_rr_lvs_closed(r, sigma, t, F::zero())?;
        return Ok((
            McEstimate::exact(lvh, n_paths, closed_lvh),
            McEstimate::exact(lvs, n_paths, closed_lvs),
        ));
    }

    let sqrt_t = t.sqrt();
    let mut lvh_samples = Vec::with_capacity(n_paths);
    let mut lvs_samples = Vec::with_capacity(n_paths);
    for path in 0..n_paths {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(path as u64);
        let z: f64 = StandardNormal.sample(&mut rng);
        let brownian = sqrt_t * real::<F>(z);
        lvh_samples.push(metrics::cpmm_rr_lvh_closed(r, sigma, t, brownian)?);
        lvs_samples.push(metrics::cpmm_rr_lvs_closed(r, sigma, t, brownian)?);
    }
    Ok((
        McEstimate::from_samples(&lvh_samples, closed_lvh),
        McEstimate::from_samples(&lvs_samples, closed_lvs),
    ))
}

/// Benchmark portfolio values recorded along a simulated path.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSeries<F> {
    pub times: Vec<F>,
    pub prices: Vec<F>,
    pub lp: Vec<F>,
    pub hold: Vec<F>,
    pub lst: Vec<F>,
}

/// Output of [`simulate_lp_path`].
#[derive(Debug, Clone, PartialEq)]
pub struct LpSimulation<F> {
    pub series: BenchmarkSeries<F>,
    /// Pool marginal price after alignment at each step.
    pub pool_spot: Vec<F>,
    /// Cumulative arbitrageur profit in underlying units.
    pub arbitrageur_profit: F,
}

/// Tolerance on the aligned pool spot price.
const SPOT_ALIGN_TOL: f64 = 1e-12;

/// Replay a price path against a pool, letting an arbitrageur realign the
/// pool at every step, and record the benchmark portfolio values.
///
/// The pool's fee rate models the arbitrageur's round-trip friction: the
/// pool is left wherever the external price sits if the pool price is inside
/// the band `[P (1 - fee), P (1 + fee)]`, and is otherwise traded exactly to
/// the nearest band edge. Alignment trades move along the zero-fee invariant
/// curve, so the recorded LP value excludes fee earnings. A concentrated
/// position whose range the price leaves is pinned at the boundary
/// composition.
pub fn simulate_lp_path<F: Real>(
    pool: &PoolState<F>,
    path: &PricePath<F>,
) -> Result<LpSimulation<F>, AmmError> {
    if pool.n_tokens() != 2 {
        return Err(AmmError::UnsupportedPoolSize(pool.n_tokens()));
    }
    let p0 = path.initial_price();
    let spot0 = pool.spot_price()?;
    if ((spot0 - p0) / p0).abs() > real::<F>(1e-9) {
        return Err(AmmError::domain(format!(
            "pool spot {spot0} does not match the initial path price {p0}"
        )));
    }
    let fee = pool.fee_rate();
    let x0 = pool.reserves()[0];
    let y0 = pool.reserves()[1];
    let staked_units = x0 + y0 / p0;

    let n = path.len();
    let mut lp = Vec::with_capacity(n);
    let mut hold = Vec::with_capacity(n);
    let mut lst = Vec::with_capacity(n);
    let mut pool_spot = Vec::with_capacity(n);
    let mut profit = F::zero();

    let mut state = AlignState::new(pool)?;
    for i in 0..n {
        let price = path.prices()[i];
        let lower = price * (F::one() - fee);
        let upper = price * (F::one() + fee);
        let current = state.spot();
        let target = if current < lower {
            Some(lower)
        } else if current > upper {
            Some(upper)
        } else {
            None
        };
        if let Some(target) = target {
            let (dx, dy) = state.align_to(target)?;
            // Value surrendered to the pool at the external price, minus the
            // friction on the token-0 leg.
            profit = profit + (-(dx * price) - dy - fee * price * dx.abs());
        }
        let (x, y) = state.holdings();
        lp.push(x * price + y);
        hold.push(x0 * price + y0);
        lst.push(staked_units * price);
        pool_spot.push(state.spot());
    }

    Ok(LpSimulation {
        series: BenchmarkSeries {
            times: path.times().to_vec(),
            prices: path.prices().to_vec(),
            lp,
            hold,
            lst,
        },
        pool_spot,
        arbitrageur_profit: profit,
    })
}

/// Mutable alignment state per curve family.
enum AlignState<F: Real> {
    /// Constant product: liquidity is conserved, holdings follow the price.
    Product { liquidity: F, price: F },
    /// Concentrated range: holdings follow the price, clamped to the range.
    Concentrated {
        position: crate::cfmm::ClmmPosition<F>,
        price: F,
    },
    /// Curve families: reserves move along the zero-fee level curve.
    Curve { pool: PoolState<F> },
}

impl<F: Real> AlignState<F> {
    fn new(pool: &PoolState<F>) -> Result<Self, AmmError> {
        match pool.family() {
            CurveFamily::ConstantProduct => Ok(AlignState::Product {
                liquidity: cpmm::liquidity_from_holdings(pool.reserves()[0], pool.reserves()[1]),
                price: pool.spot_price()?,
            }),
            CurveFamily::ConcentratedLiquidity(position) => Ok(AlignState::Concentrated {
                position: *position,
                price: pool.spot_price()?,
            }),
            _ => {
                // Alignment trades travel the zero-fee curve.
                let zero_fee = PoolState::new(
                    pool.reserves().to_vec(),
                    F::zero(),
                    pool.fee_mode(),
                    pool.family().clone(),
                )?;
                Ok(AlignState::Curve { pool: zero_fee })
            }
        }
    }

    fn holdings(&self) -> (F, F) {
        match self {
            AlignState::Product { liquidity, price } => {
                cpmm::holdings(*liquidity, *price).expect("valid state")
            }
            AlignState::Concentrated { position, price } => {
                position.holdings(*price).expect("valid state")
            }
            AlignState::Curve { pool } => (pool.reserves()[0], pool.reserves()[1]),
        }
    }

    fn spot(&self) -> F {
        match self {
            AlignState::Product { price, .. } => *price,
            AlignState::Concentrated { position, price } => {
                // The position cannot quote outside its own range.
                (*price)
                    .max(position.lower_price())
                    .min(position.upper_price())
            }
            AlignState::Curve { pool } => pool.spot_price().expect("valid state"),
        }
    }

    /// Trade the pool to the target price; returns `(dx, dy)` received by
    /// the pool (signed).
    fn align_to(&mut self, target: F) -> Result<(F, F), AmmError> {
        match self {
            AlignState::Product { liquidity, price } => {
                let before = cpmm::holdings(*liquidity, *price)?;
                *price = target;
                let after = cpmm::holdings(*liquidity, *price)?;
                Ok((after.0 - before.0, after.1 - before.1))
            }
            AlignState::Concentrated { position, price } => {
                let clamped = target
                    .max(position.lower_price())
                    .min(position.upper_price());
                let before = position.holdings(*price)?;
                *price = clamped;
                let after = position.holdings(*price)?;
                Ok((after.0 - before.0, after.1 - before.1))
            }
            AlignState::Curve { pool } => curve_align(pool, target),
        }
    }
}

/// Bisection on the swap size that moves a Curve pool's spot price to
/// `target`; commits the trade and returns the signed reserve deltas.
fn curve_align<F: Real>(pool: &mut PoolState<F>, target: F) -> Result<(F, F), AmmError> {
    let spot = pool.spot_price()?;
    let rel = |p: F| ((p - target) / target).abs();
    if rel(spot) <= real::<F>(SPOT_ALIGN_TOL) {
        return Ok((F::zero(), F::zero()));
    }
    // Selling token 0 into the pool lowers its price; selling token 1 raises
    // it.
    let in_index = if spot > target { 0 } else { 1 };
    let out_index = 1 - in_index;
    let before = (pool.reserves()[0], pool.reserves()[1]);

    let spot_after = |amount: F, pool: &PoolState<F>| -> Result<(F, Vec<F>), AmmError> {
        let quote = pool.swap(in_index, out_index, amount)?;
        Ok((quote.spot_price_after, quote.new_reserves))
    };
    let crossed = |p: F| {
        if in_index == 0 {
            p <= target
        } else {
            p >= target
        }
    };

    // Expand until the trade overshoots the target.
    let mut hi = pool.reserves()[in_index] * real::<F>(1e-6);
    let mut lo = F::zero();
    let mut committed: Option<Vec<F>> = None;
    for _ in 0..256 {
        match spot_after(hi, pool) {
            Ok((p, reserves)) => {
                if crossed(p) {
                    committed = Some(reserves);
                    break;
                }
                lo = hi;
                hi = hi * real::<F>(2.0);
            }
            Err(AmmError::InsufficientLiquidity { .. }) => {
                // Cannot reach the target without draining the pool; trade as
                // far as the curve allows by shrinking toward `lo`.
                hi = (lo + hi) * real::<F>(0.5);
            }
            Err(e) => return Err(e),
        }
    }
    if committed.is_none() {
        return Err(AmmError::NonConvergence {
            iterations: 256,
            residual: rel(spot).to_f64().unwrap_or(f64::NAN),
        });
    }

    // Bisect the input amount until the post-trade spot matches the target.
    let mut best = committed.unwrap();
    for _ in 0..200 {
        let mid = (lo + hi) * real::<F>(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let (p, reserves) = spot_after(mid, pool)?;
        if rel(p) <= real::<F>(SPOT_ALIGN_TOL) {
            best = reserves;
            break;
        }
        if crossed(p) {
            hi = mid;
            best = reserves;
        } else {
            lo = mid;
        }
    }
    let after = (best[0], best[1]);
    *pool = pool.with_reserves(best)?;
    Ok((after.0 - before.0, after.1 - before.1))
}
