//! Concentrated-liquidity position math (single continuous price range).
//!
//! A position of size `L` over the range `[p_a, p_b]` obeys the shifted
//! product invariant while the price is in range:
//!
//! ```text
//! (x + L / sqrt(p_b)) * (y + L * sqrt(p_a)) = L^2
//! ```
//!
//! Outside the range the position is entirely in one token.

use crate::error::AmmError;
use crate::num::Real;

/// A concentrated-liquidity position: size plus price bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClmmPosition<F> {
    liquidity: F,
    lower_price: F,
    upper_price: F,
}

impl<F: Real> ClmmPosition<F> {
    pub fn new(liquidity: F, lower_price: F, upper_price: F) -> Result<Self, AmmError> {
        if !(liquidity > F::zero()) || !liquidity.is_finite() {
            return Err(AmmError::domain(format!(
                "position liquidity must be positive, got {liquidity}"
            )));
        }
        if !(lower_price > F::zero()) || !lower_price.is_finite() || !upper_price.is_finite() {
            return Err(AmmError::domain(format!(
                "price bounds must be positive and finite, got [{lower_price}, {upper_price}]"
            )));
        }
        if !(lower_price < upper_price) {
            return Err(AmmError::domain(format!(
                "lower price {lower_price} must be strictly below upper price {upper_price}"
            )));
        }
        Ok(Self {
            liquidity,
            lower_price,
            upper_price,
        })
    }

    pub fn liquidity(&self) -> F {
        self.liquidity
    }

    pub fn lower_price(&self) -> F {
        self.lower_price
    }

    pub fn upper_price(&self) -> F {
        self.upper_price
    }

    pub fn is_in_range(&self, price: F) -> bool {
        price >= self.lower_price && price <= self.upper_price
    }

    /// Real holdings `(x, y)` at external price `price`.
    ///
    /// Below the range all value sits in token 0, above it in token 1; the
    /// three branches meet continuously at the bounds.
    pub fn holdings(&self, price: F) -> Result<(F, F), AmmError> {
        if !(price > F::zero()) || !price.is_finite() {
            return Err(AmmError::domain(format!(
                "price must be positive, got {price}"
            )));
        }
        let l = self.liquidity;
        let sqrt_a = self.lower_price.sqrt();
        let sqrt_b = self.upper_price.sqrt();
        if price <= self.lower_price {
            Ok((l * (sqrt_a.recip() - sqrt_b.recip()), F::zero()))
        } else if price >= self.upper_price {
            Ok((F::zero(), l * (sqrt_b - sqrt_a)))
        } else {
            let sqrt_p = price.sqrt();
            Ok((
                l * (sqrt_p.recip() - sqrt_b.recip()),
                l * (sqrt_p - sqrt_a),
            ))
        }
    }

    /// Position value `x * price + y` at external price `price`.
    pub fn value(&self, price: F) -> Result<F, AmmError> {
        let (x, y) = self.holdings(price)?;
        Ok(x * price + y)
    }

    /// Liquidity such that the position is worth `value` at `price`.
    pub fn liquidity_for_value(
        value: F,
        price: F,
        lower_price: F,
        upper_price: F,
    ) -> Result<F, AmmError> {
        if !(value > F::zero()) || !value.is_finite() {
            return Err(AmmError::domain(format!(
                "target value must be positive, got {value}"
            )));
        }
        let unit = ClmmPosition::new(F::one(), lower_price, upper_price)?;
        let per_unit = unit.value(price)?;
        if !(per_unit > F::zero()) {
            return Err(AmmError::domain(
                "position has zero value per unit of liquidity at this price".to_string(),
            ));
        }
        Ok(value / per_unit)
    }

    /// Relative deviation of `(x, y)` from the shifted product invariant.
    pub fn invariant_residual(&self, x: F, y: F) -> F {
        let l = self.liquidity;
        let virtual_x = x + l / self.upper_price.sqrt();
        let virtual_y = y + l * self.lower_price.sqrt();
        ((virtual_x * virtual_y - l * l) / (l * l)).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_range_rejected() {
        assert!(ClmmPosition::new(1.0f64, 1.0, 1.0).is_err());
        assert!(ClmmPosition::new(1.0f64, 2.0, 1.0).is_err());
        assert!(ClmmPosition::new(0.0f64, 1.0, 2.0).is_err());
    }

    #[test]
    fn mid_range_holdings() {
        // sqrt(0.25) = 0.5, sqrt(4) = 2.
        let pos = ClmmPosition::new(100.0f64, 0.25, 4.0).unwrap();
        let (x, y) = pos.holdings(1.0).unwrap();
        assert_eq!((x, y), (50.0, 50.0));
    }

    #[test]
    fn lower_bound_holdings_all_token0() {
        let pos = ClmmPosition::new(100.0f64, 0.25, 4.0).unwrap();
        let (x, y) = pos.holdings(0.25).unwrap();
        assert_eq!((x, y), (150.0, 0.0));
        // Below the range the composition stays pinned.
        assert_eq!(pos.holdings(0.1).unwrap(), (150.0, 0.0));
    }

    #[test]
    fn upper_bound_holdings_all_token1() {
        let pos = ClmmPosition::new(100.0f64, 0.25, 4.0).unwrap();
        let (x, y) = pos.holdings(4.0).unwrap();
        assert_eq!(x, 0.0);
        assert_eq!(y, 100.0 * (2.0 - 0.5));
    }

    #[test]
    fn holdings_satisfy_invariant_in_range() {
        let pos = ClmmPosition::new(3.7f64, 0.8, 1.9).unwrap();
        for &p in &[0.81, 1.0, 1.3, 1.89] {
            let (x, y) = pos.holdings(p).unwrap();
            assert!(pos.invariant_residual(x, y) < 1e-12);
        }
    }

    #[test]
    fn continuity_at_bounds() {
        let pos = ClmmPosition::new(5.0f64, 0.9, 1.1).unwrap();
        for &bound in &[0.9f64, 1.1] {
            let eps = bound * 1e-13;
            let (x_lo, y_lo) = pos.holdings(bound - eps).unwrap();
            let (x_at, y_at) = pos.holdings(bound).unwrap();
            let (x_hi, y_hi) = pos.holdings(bound + eps).unwrap();
            for (a, b) in [(x_lo, x_at), (x_at, x_hi), (y_lo, y_at), (y_at, y_hi)] {
                assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn sizing_round_trips() {
        let l = ClmmPosition::liquidity_for_value(1.0f64, 1.0, 0.9975, 1.0075).unwrap();
        let pos = ClmmPosition::new(l, 0.9975, 1.0075).unwrap();
        let v = pos.value(1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }
}
