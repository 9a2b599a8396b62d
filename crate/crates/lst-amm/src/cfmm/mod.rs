//! Swap, liquidity and spot-price math for four CFMM families:
//! constant product, concentrated liquidity, Stableswap and Cryptoswap.

pub mod clmm;
pub mod cpmm;
mod curve;
pub mod suitability;

pub use clmm::ClmmPosition;
pub use suitability::{suitability, CounterAsset, FamilyKind, LstKind, Suggestion};

use crate::error::AmmError;
use crate::num::{real, Real};
use curve::CurveKind;

/// Curve family plus its shape parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveFamily<F> {
    ConstantProduct,
    ConcentratedLiquidity(ClmmPosition<F>),
    Stableswap { amp: F, n_tokens: usize },
    Cryptoswap { amp: F, gamma: F },
}

impl<F: Real> CurveFamily<F> {
    pub fn kind(&self) -> FamilyKind {
        match self {
            CurveFamily::ConstantProduct => FamilyKind::ConstantProduct,
            CurveFamily::ConcentratedLiquidity(_) => FamilyKind::ConcentratedLiquidity,
            CurveFamily::Stableswap { .. } => FamilyKind::Stableswap,
            CurveFamily::Cryptoswap { .. } => FamilyKind::Cryptoswap,
        }
    }

    fn curve_kind(&self) -> Option<CurveKind<F>> {
        match *self {
            CurveFamily::Stableswap { amp, .. } => Some(CurveKind::Stable { amp }),
            CurveFamily::Cryptoswap { amp, gamma } => Some(CurveKind::Crypto { amp, gamma }),
            _ => None,
        }
    }
}

/// Where trading fees end up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeeMode {
    /// Fees stay in the pool reserves (Curve style, fees compound).
    FeesToPool,
    /// Fees are withheld outside the pool (Uniswap v3 style).
    FeesAccruedSeparately,
}

/// Immutable pool snapshot: reserves, fee schedule and curve family.
#[derive(Debug, Clone, PartialEq)]
pub struct PoolState<F> {
    reserves: Vec<F>,
    fee_rate: F,
    fee_mode: FeeMode,
    family: CurveFamily<F>,
}

/// Result of quoting a swap against a [`PoolState`].
#[derive(Debug, Clone, PartialEq)]
pub struct SwapQuote<F> {
    pub amount_in: F,
    pub amount_out: F,
    /// Fee charged on the input side: `fee_rate * amount_in`, in input-token
    /// units.
    pub fee_paid: F,
    pub new_reserves: Vec<F>,
    pub spot_price_after: F,
}

impl<F: Real> PoolState<F> {
    pub fn new(
        reserves: Vec<F>,
        fee_rate: F,
        fee_mode: FeeMode,
        family: CurveFamily<F>,
    ) -> Result<Self, AmmError> {
        if reserves.len() < 2 {
            return Err(AmmError::domain(format!(
                "a pool needs at least 2 reserves, got {}",
                reserves.len()
            )));
        }
        for (i, &x) in reserves.iter().enumerate() {
            if !(x > F::zero()) || !x.is_finite() {
                return Err(AmmError::domain(format!(
                    "reserve {i} must be positive and finite, got {x}"
                )));
            }
        }
        if !(fee_rate >= F::zero() && fee_rate < F::one()) {
            return Err(AmmError::domain(format!(
                "fee rate must lie in [0, 1), got {fee_rate}"
            )));
        }
        match &family {
            CurveFamily::ConstantProduct => {
                if reserves.len() != 2 {
                    return Err(AmmError::UnsupportedPoolSize(reserves.len()));
                }
            }
            CurveFamily::ConcentratedLiquidity(position) => {
                if reserves.len() != 2 {
                    return Err(AmmError::UnsupportedPoolSize(reserves.len()));
                }
                let res = position.invariant_residual(reserves[0], reserves[1]);
                if !(res <= real::<F>(1e-12).max(F::epsilon() * real::<F>(64.0))) {
                    return Err(AmmError::domain(format!(
                        "reserves do not satisfy the position invariant (residual {res})"
                    )));
                }
            }
            CurveFamily::Stableswap { amp, n_tokens } => {
                if !(*amp > F::zero()) {
                    return Err(AmmError::domain(format!(
                        "amplification must be positive, got {amp}"
                    )));
                }
                if *n_tokens < 2 || *n_tokens != reserves.len() {
                    return Err(AmmError::domain(format!(
                        "stableswap token count {n_tokens} does not match {} reserves",
                        reserves.len()
                    )));
                }
            }
            CurveFamily::Cryptoswap { amp, gamma } => {
                if !(*amp > F::zero()) || !(*gamma > F::zero()) {
                    return Err(AmmError::domain(format!(
                        "cryptoswap parameters must be positive, got A={amp}, gamma={gamma}"
                    )));
                }
                if reserves.len() != 2 {
                    return Err(AmmError::UnsupportedPoolSize(reserves.len()));
                }
            }
        }
        Ok(Self {
            reserves,
            fee_rate,
            fee_mode,
            family,
        })
    }

    /// Pool whose reserves are the holdings of `position` at `price`.
    pub fn clmm_at_price(
        position: ClmmPosition<F>,
        price: F,
        fee_rate: F,
        fee_mode: FeeMode,
    ) -> Result<Self, AmmError> {
        let (x, y) = position.holdings(price)?;
        if !(x > F::zero()) || !(y > F::zero()) {
            return Err(AmmError::domain(
                "price must be strictly inside the position range".to_string(),
            ));
        }
        Self::new(
            vec![x, y],
            fee_rate,
            fee_mode,
            CurveFamily::ConcentratedLiquidity(position),
        )
    }

    pub fn reserves(&self) -> &[F] {
        &self.reserves
    }

    pub fn fee_rate(&self) -> F {
        self.fee_rate
    }

    pub fn fee_mode(&self) -> FeeMode {
        self.fee_mode
    }

    pub fn family(&self) -> &CurveFamily<F> {
        &self.family
    }

    pub fn n_tokens(&self) -> usize {
        self.reserves.len()
    }

    /// Marginal price of token 0 in units of token 1 (`-dy/dx` along the
    /// family's level curve).
    pub fn spot_price(&self) -> Result<F, AmmError> {
        if self.reserves.len() != 2 {
            return Err(AmmError::UnsupportedPoolSize(self.reserves.len()));
        }
        let (x, y) = (self.reserves[0], self.reserves[1]);
        match &self.family {
            CurveFamily::ConstantProduct => Ok(y / x),
            CurveFamily::ConcentratedLiquidity(position) => {
                let virtual_x = x + position.liquidity() / position.upper_price().sqrt();
                let virtual_y = y + position.liquidity() * position.lower_price().sqrt();
                Ok(virtual_y / virtual_x)
            }
            _ => {
                let kind = self.family.curve_kind().expect("curve family");
                let d = curve::solve_d(kind, &self.reserves)?;
                curve::spot_price(kind, &self.reserves, d)
            }
        }
    }

    /// Quote a swap of `amount_in` of token `in_index` for token `out_index`.
    ///
    /// The fee is charged on the input side; only the net input moves the
    /// curve. Under [`FeeMode::FeesToPool`] the fee is then added to the
    /// input-side reserve, under [`FeeMode::FeesAccruedSeparately`] it is
    /// withheld from the pool.
    pub fn swap(&self, in_index: usize, out_index: usize, amount_in: F) -> Result<SwapQuote<F>, AmmError> {
        if self.reserves.len() != 2 {
            return Err(AmmError::UnsupportedPoolSize(self.reserves.len()));
        }
        if in_index >= 2 || out_index >= 2 || in_index == out_index {
            return Err(AmmError::domain(format!(
                "invalid token indices ({in_index}, {out_index})"
            )));
        }
        if !(amount_in > F::zero()) || !amount_in.is_finite() {
            return Err(AmmError::domain(format!(
                "swap input must be positive, got {amount_in}"
            )));
        }
        let fee_paid = self.fee_rate * amount_in;
        let net_in = amount_in - fee_paid;
        let old_in = self.reserves[in_index];
        let old_out = self.reserves[out_index];

        let new_out = match &self.family {
            CurveFamily::ConstantProduct => {
                // x * y is constant along the zero-fee curve.
                old_in * old_out / (old_in + net_in)
            }
            CurveFamily::ConcentratedLiquidity(position) => {
                let l = position.liquidity();
                let (shift_x, shift_y) = (
                    l / position.upper_price().sqrt(),
                    l * position.lower_price().sqrt(),
                );
                let (shift_in, shift_out) = if in_index == 0 {
                    (shift_x, shift_y)
                } else {
                    (shift_y, shift_x)
                };
                let virtual_in = old_in + shift_in;
                let virtual_out = old_out + shift_out;
                let new_virtual_out = virtual_in * virtual_out / (virtual_in + net_in);
                new_virtual_out - shift_out
            }
            _ => {
                let kind = self.family.curve_kind().expect("curve family");
                let d = curve::solve_d(kind, &self.reserves)?;
                curve::solve_out_balance(kind, d, old_in + net_in, old_out)?
            }
        };

        let amount_out = (old_out - new_out).max(F::zero());
        if new_out <= F::zero() || amount_out >= old_out {
            return Err(AmmError::InsufficientLiquidity {
                requested: amount_out.to_f64().unwrap_or(f64::NAN),
                available: old_out.to_f64().unwrap_or(f64::NAN),
            });
        }

        let retained_in = match self.fee_mode {
            FeeMode::FeesToPool => amount_in,
            FeeMode::FeesAccruedSeparately => net_in,
        };
        let mut new_reserves = self.reserves.clone();
        new_reserves[in_index] = old_in + retained_in;
        new_reserves[out_index] = new_out;

        let after = PoolState {
            reserves: new_reserves.clone(),
            fee_rate: self.fee_rate,
            fee_mode: self.fee_mode,
            family: self.family.clone(),
        };
        let spot_price_after = after.spot_price()?;

        Ok(SwapQuote {
            amount_in,
            amount_out,
            fee_paid,
            new_reserves,
            spot_price_after,
        })
    }

    /// Pool with the given reserves but everything else unchanged.
    pub fn with_reserves(&self, reserves: Vec<F>) -> Result<Self, AmmError> {
        Self::new(
            reserves,
            self.fee_rate,
            self.fee_mode,
            self.family.clone(),
        )
    }

    /// Relative deviation of the current reserves from the family invariant
    /// at the given reference constant (`L` for product-style families, `D`
    /// for the Curve families).
    pub fn invariant_residual(&self, reference: F) -> Result<F, AmmError> {
        if self.reserves.len() != 2 {
            return Err(AmmError::UnsupportedPoolSize(self.reserves.len()));
        }
        let (x, y) = (self.reserves[0], self.reserves[1]);
        match &self.family {
            CurveFamily::ConstantProduct => {
                let l2 = reference * reference;
                Ok(((x * y - l2) / l2).abs())
            }
            CurveFamily::ConcentratedLiquidity(position) => Ok(position.invariant_residual(x, y)),
            _ => {
                let kind = self.family.curve_kind().expect("curve family");
                Ok(curve::relative_residual(kind, &self.reserves, reference))
            }
        }
    }

    /// The family's invariant constant at the current reserves.
    pub fn invariant_constant(&self) -> Result<F, AmmError> {
        match &self.family {
            CurveFamily::ConstantProduct => {
                Ok(cpmm::liquidity_from_holdings(self.reserves[0], self.reserves[1]))
            }
            CurveFamily::ConcentratedLiquidity(position) => Ok(position.liquidity()),
            _ => {
                let kind = self.family.curve_kind().expect("curve family");
                curve::solve_d(kind, &self.reserves)
            }
        }
    }
}

/// Holdings of a constant-product position; see [`cpmm::holdings`].
pub fn cpmm_holdings<F: Real>(liquidity: F, price: F) -> Result<(F, F), AmmError> {
    cpmm::holdings(liquidity, price)
}

/// Holdings of a concentrated-liquidity position; see
/// [`ClmmPosition::holdings`].
pub fn clmm_holdings<F: Real>(position: &ClmmPosition<F>, price: F) -> Result<(F, F), AmmError> {
    position.holdings(price)
}

/// Stableswap invariant constant for the given reserves.
pub fn stableswap_solve_d<F: Real>(reserves: &[F], amp: F) -> Result<F, AmmError> {
    curve::solve_d(CurveKind::Stable { amp }, reserves)
}

/// Cryptoswap invariant constant for the given reserves.
pub fn cryptoswap_solve_d<F: Real>(reserves: &[F], amp: F, gamma: F) -> Result<F, AmmError> {
    curve::solve_d(CurveKind::Crypto { amp, gamma }, reserves)
}
