//! LST price trajectories.
//!
//! A reward-LST price (in units of the underlying) follows a geometric
//! Brownian motion with drift equal to the staking rate `r`:
//!
//! ```text
//! P(t) = P(0) * exp((r - sigma^2 / 2) * t + sigma * B(t))
//! ```
//!
//! With `sigma = 0` this degenerates to the ideal trajectory
//! `P(t) = P(0) * e^(r t)`. Rebase-LSTs instead keep a unit price and grow
//! balances by a daily factor.
//!
//! Time is measured in years; the daily grid step is `1/365`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::AmmError;
use crate::num::{real, Real};

/// Days per year on the daily grid.
pub const DAYS_PER_YEAR: f64 = 365.0;

/// Parameters of the reward-LST price process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbmParams<F> {
    pub initial_price: F,
    /// Annualized staking rate (the drift).
    pub staking_rate: F,
    /// Annualized volatility; zero gives the ideal trajectory.
    pub volatility: F,
}

impl<F: Real> GbmParams<F> {
    pub fn new(initial_price: F, staking_rate: F, volatility: F) -> Result<Self, AmmError> {
        if !(initial_price > F::zero()) || !initial_price.is_finite() {
            return Err(AmmError::domain(format!(
                "initial price must be positive, got {initial_price}"
            )));
        }
        if !staking_rate.is_finite() {
            return Err(AmmError::domain("staking rate must be finite".to_string()));
        }
        if !(volatility >= F::zero()) || !volatility.is_finite() {
            return Err(AmmError::domain(format!(
                "volatility must be non-negative, got {volatility}"
            )));
        }
        Ok(Self {
            initial_price,
            staking_rate,
            volatility,
        })
    }
}

/// A time-indexed price series, optionally with the Brownian samples that
/// generated it.
#[derive(Debug, Clone, PartialEq)]
pub struct PricePath<F> {
    times: Vec<F>,
    prices: Vec<F>,
    brownian: Option<Vec<F>>,
}

impl<F: Real> PricePath<F> {
    pub fn new(times: Vec<F>, prices: Vec<F>, brownian: Option<Vec<F>>) -> Result<Self, AmmError> {
        validate_times(&times)?;
        if prices.len() != times.len() {
            return Err(AmmError::domain(format!(
                "{} prices for {} grid points",
                prices.len(),
                times.len()
            )));
        }
        if let Some(b) = &brownian {
            if b.len() != times.len() {
                return Err(AmmError::domain(
                    "brownian samples must match the grid length".to_string(),
                ));
            }
        }
        for &p in &prices {
            if !(p > F::zero()) || !p.is_finite() {
                return Err(AmmError::domain(format!(
                    "prices must be positive and finite, got {p}"
                )));
            }
        }
        Ok(Self {
            times,
            prices,
            brownian,
        })
    }

    pub fn times(&self) -> &[F] {
        &self.times
    }

    pub fn prices(&self) -> &[F] {
        &self.prices
    }

    pub fn brownian(&self) -> Option<&[F]> {
        self.brownian.as_deref()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn initial_price(&self) -> F {
        self.prices[0]
    }

    pub fn terminal_price(&self) -> F {
        *self.prices.last().expect("non-empty path")
    }

    /// Uniform grid of `steps + 1` points covering `[0, horizon]`.
    pub fn uniform_grid(horizon: F, steps: usize) -> Result<Vec<F>, AmmError> {
        if !(horizon > F::zero()) || steps == 0 {
            return Err(AmmError::domain(
                "horizon must be positive and steps non-zero".to_string(),
            ));
        }
        let steps_f = real::<F>(steps as f64);
        Ok((0..=steps)
            .map(|i| horizon * real::<F>(i as f64) / steps_f)
            .collect())
    }
}

fn validate_times<F: Real>(times: &[F]) -> Result<(), AmmError> {
    if times.is_empty() {
        return Err(AmmError::domain("empty time grid".to_string()));
    }
    if times[0] != F::zero() {
        return Err(AmmError::domain(format!(
            "time grid must start at 0, got {}",
            times[0]
        )));
    }
    for w in times.windows(2) {
        if !(w[1] > w[0]) {
            return Err(AmmError::domain(
                "time grid must be strictly increasing".to_string(),
            ));
        }
    }
    Ok(())
}

/// Deterministic trajectory `P(t) = P(0) e^(r t)`; requires zero volatility.
pub fn ideal_path<F: Real>(params: &GbmParams<F>, times: &[F]) -> Result<PricePath<F>, AmmError> {
    if params.volatility != F::zero() {
        return Err(AmmError::domain(format!(
            "ideal path requires zero volatility, got {}",
            params.volatility
        )));
    }
    validate_times(times)?;
    let prices = times
        .iter()
        .map(|&t| params.initial_price * (params.staking_rate * t).exp())
        .collect();
    PricePath::new(times.to_vec(), prices, None)
}

/// Sample one trajectory on `times` from independent Gaussian increments of
/// the driving Brownian motion. Reproducible per `(seed, stream)`.
pub fn sample_gbm_stream<F: Real>(
    params: &GbmParams<F>,
    times: &[F],
    seed: u64,
    stream: u64,
) -> Result<PricePath<F>, AmmError> {
    validate_times(times)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let half = real::<F>(0.5);
    let drift = params.staking_rate - half * params.volatility * params.volatility;

    let mut brownian = Vec::with_capacity(times.len());
    let mut prices = Vec::with_capacity(times.len());
    brownian.push(F::zero());
    prices.push(params.initial_price);
    let mut b = F::zero();
    for w in times.windows(2) {
        let dt = w[1] - w[0];
        let z: f64 = StandardNormal.sample(&mut rng);
        b = b + dt.sqrt() * real::<F>(z);
        brownian.push(b);
        let log_ratio = drift * w[1] + params.volatility * b;
        prices.push(params.initial_price * log_ratio.exp());
    }
    PricePath::new(times.to_vec(), prices, Some(brownian))
}

/// Sample one trajectory with the default stream; see [`sample_gbm_stream`].
pub fn sample_gbm<F: Real>(
    params: &GbmParams<F>,
    times: &[F],
    seed: u64,
) -> Result<PricePath<F>, AmmError> {
    sample_gbm_stream(params, times, seed, 0)
}

/// Per-day balance growth factors of a rebase token.
#[derive(Debug, Clone, PartialEq)]
pub struct RebaseSchedule<F> {
    multipliers: Vec<F>,
}

impl<F: Real> RebaseSchedule<F> {
    pub fn multipliers(&self) -> &[F] {
        &self.multipliers
    }

    /// Cumulative balance growth: element `i` is the factor after `i` days,
    /// starting at 1.
    pub fn compounded(&self) -> Vec<F> {
        let mut acc = F::one();
        let mut out = Vec::with_capacity(self.multipliers.len() + 1);
        out.push(acc);
        for &m in &self.multipliers {
            acc = acc * m;
            out.push(acc);
        }
        out
    }

    /// Total growth over the whole schedule.
    pub fn total(&self) -> F {
        self.multipliers
            .iter()
            .fold(F::one(), |acc, &m| acc * m)
    }
}

/// Daily rebase factors `e^(rate / 365)` from a series of annualized rates.
pub fn rebase_schedule<F: Real>(annualized_rates: &[F]) -> Result<RebaseSchedule<F>, AmmError> {
    let day = real::<F>(1.0 / DAYS_PER_YEAR);
    let mut multipliers = Vec::with_capacity(annualized_rates.len());
    for &rate in annualized_rates {
        if !rate.is_finite() {
            return Err(AmmError::domain("staking rate must be finite".to_string()));
        }
        multipliers.push((rate * day).exp());
    }
    Ok(RebaseSchedule { multipliers })
}
