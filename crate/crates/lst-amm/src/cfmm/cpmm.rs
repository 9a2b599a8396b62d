//! Constant-product pool math.
//!
//! A two-token constant-product pool with liquidity `L` holds, at price `P`
//! (token 1 per token 0):
//!
//! ```text
//! x = L / sqrt(P),    y = L * sqrt(P),    x * y = L^2
//! ```

use crate::error::AmmError;
use crate::num::Real;

/// Holdings `(x, y)` of a constant-product position of size `liquidity`
/// when the marginal price is `price`.
pub fn holdings<F: Real>(liquidity: F, price: F) -> Result<(F, F), AmmError> {
    if !(liquidity > F::zero()) || !liquidity.is_finite() {
        return Err(AmmError::domain(format!(
            "constant-product liquidity must be positive, got {liquidity}"
        )));
    }
    if !(price > F::zero()) || !price.is_finite() {
        return Err(AmmError::domain(format!(
            "price must be positive, got {price}"
        )));
    }
    let sqrt_p = price.sqrt();
    Ok((liquidity / sqrt_p, liquidity * sqrt_p))
}

/// Position size implied by a pair of holdings: `L = sqrt(x * y)`.
pub fn liquidity_from_holdings<F: Real>(x: F, y: F) -> F {
    (x * y).sqrt()
}
