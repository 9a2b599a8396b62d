//! Stableswap and Cryptoswap invariant solvers.
//!
//! Both families share one invariant equation in the pool constant `D`:
//!
//! ```text
//! K * D^(N-1) * sum(x) + prod(x) = K * D^N + (D/N)^N
//! ```
//!
//! with `K0 = prod(x) * N^N / D^N` and
//!
//! ```text
//! Stableswap:  K = A * K0
//! Cryptoswap:  K = A * K0 * gamma^2 / (gamma + 1 - K0)^2
//! ```
//!
//! `solve_d` finds `D` for given reserves; `solve_out_balance` finds the
//! post-trade balance of the output token with `D` held fixed. Both use a
//! bracketed Newton iteration that falls back to bisection whenever a step
//! leaves the bracket, so convergence does not depend on the starting point.
//!
//! Bracket for `D`: the residual is positive at `N * geomean(x)` and
//! non-positive at `sum(x)` (AM-GM), so the root always lies between the two.
//! On that interval `K0 <= 1`, which keeps the Cryptoswap denominator
//! `gamma + 1 - K0` away from zero.

use crate::error::AmmError;
use crate::num::{real, solver_tolerance, Real};

pub(crate) const MAX_ITERATIONS: u32 = 255;

/// Invariant family: amplification only, or amplification plus `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum CurveKind<F> {
    Stable { amp: F },
    Crypto { amp: F, gamma: F },
}

impl<F: Real> CurveKind<F> {
    fn validate(&self) -> Result<(), AmmError> {
        let (amp, gamma) = match *self {
            CurveKind::Stable { amp } => (amp, None),
            CurveKind::Crypto { amp, gamma } => (amp, Some(gamma)),
        };
        if !(amp > F::zero()) || !amp.is_finite() {
            return Err(AmmError::domain(format!(
                "amplification must be positive, got {amp}"
            )));
        }
        if let Some(g) = gamma {
            if !(g > F::zero()) || !g.is_finite() {
                return Err(AmmError::domain(format!("gamma must be positive, got {g}")));
            }
        }
        Ok(())
    }

    /// `K` and `dK/dK0` at the given `K0`.
    fn k_and_dk(&self, k0: F) -> (F, F) {
        match *self {
            CurveKind::Stable { amp } => (amp * k0, amp),
            CurveKind::Crypto { amp, gamma } => {
                let denom = gamma + F::one() - k0;
                let g2 = gamma * gamma;
                let k = amp * k0 * g2 / (denom * denom);
                let dk = amp * g2 * (gamma + F::one() + k0) / (denom * denom * denom);
                (k, dk)
            }
        }
    }
}

fn check_reserves<F: Real>(reserves: &[F]) -> Result<(), AmmError> {
    if reserves.len() < 2 {
        return Err(AmmError::domain(format!(
            "need at least 2 reserves, got {}",
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
    Ok(())
}

/// Residual of the invariant equation and its relative magnitude.
///
/// Returns `(f, scale)` with `f = lhs - rhs`; `scale` is the sum of the
/// absolute term magnitudes, so `|f| / scale` is a relative residual.
pub(crate) fn residual<F: Real>(kind: CurveKind<F>, reserves: &[F], d: F) -> (F, F) {
    let n = reserves.len();
    let n_f = real::<F>(n as f64);
    let sum: F = reserves.iter().fold(F::zero(), |acc, &x| acc + x);
    let prod: F = reserves.iter().fold(F::one(), |acc, &x| acc * x);
    let d_over_n_pow = (d / n_f).powi(n as i32);
    let k0 = prod / d.powi(n as i32) * n_f.powi(n as i32);
    let (k, _) = kind.k_and_dk(k0);
    let t1 = k * d.powi(n as i32 - 1) * sum;
    let t3 = k * d.powi(n as i32);
    let f = t1 + prod - t3 - d_over_n_pow;
    let scale = t1.abs() + prod + t3.abs() + d_over_n_pow;
    (f, scale)
}

/// Residual plus its derivative in `D`.
fn residual_and_derivative<F: Real>(kind: CurveKind<F>, reserves: &[F], d: F) -> (F, F, F) {
    let n = reserves.len();
    let n_f = real::<F>(n as f64);
    let sum: F = reserves.iter().fold(F::zero(), |acc, &x| acc + x);
    let prod: F = reserves.iter().fold(F::one(), |acc, &x| acc * x);
    let d_pow_n1 = d.powi(n as i32 - 1);
    let d_pow_n = d_pow_n1 * d;
    let d_over_n_pow = (d / n_f).powi(n as i32);
    let k0 = prod / d_pow_n * n_f.powi(n as i32);
    let (k, dk_dk0) = kind.k_and_dk(k0);
    let dk0_dd = -n_f * k0 / d;
    let dk_dd = dk_dk0 * dk0_dd;

    let t1 = k * d_pow_n1 * sum;
    let t3 = k * d_pow_n;
    let f = t1 + prod - t3 - d_over_n_pow;
    let scale = t1.abs() + prod + t3.abs() + d_over_n_pow;

    let n1 = real::<F>((n - 1) as f64);
    let d_pow_n2 = if n >= 2 { d.powi(n as i32 - 2) } else { F::one() };
    let df = dk_dd * (d_pow_n1 * sum - d_pow_n)
        + k * (n1 * d_pow_n2 * sum - n_f * d_pow_n1)
        - d_pow_n1 / n_f.powi(n as i32 - 1);
    (f, df, scale)
}

/// Bracketed Newton iteration on a scalar residual.
///
/// `eval` returns `(f, df, scale)`. The bracket `[lo, hi]` must satisfy
/// `f(lo) >= 0 >= f(hi)`; whenever a Newton step lands outside the current
/// bracket the midpoint is used instead. Iterates until the bracket is
/// exhausted at float resolution, then returns the best iterate seen,
/// provided its relative residual meets `tol`.
fn newton_bisect<F: Real>(
    mut eval: impl FnMut(F) -> (F, F, F),
    mut lo: F,
    mut hi: F,
    start: F,
    tol: F,
) -> Result<F, AmmError> {
    let mut x = start.max(lo).min(hi);
    let mut best_x = x;
    let mut best_rel = F::infinity();
    for _ in 0..MAX_ITERATIONS {
        let (f, df, scale) = eval(x);
        let rel = if scale > F::zero() {
            (f / scale).abs()
        } else {
            f.abs()
        };
        if rel < best_rel {
            best_rel = rel;
            best_x = x;
        }
        if f == F::zero() {
            return Ok(x);
        }
        if f > F::zero() {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= F::epsilon() * hi.abs() {
            break;
        }
        let newton = x - f / df;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) * real::<F>(0.5)
        };
        if next == x {
            break;
        }
        x = next;
    }
    if best_rel <= tol {
        Ok(best_x)
    } else {
        Err(AmmError::NonConvergence {
            iterations: MAX_ITERATIONS,
            residual: best_rel.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Solve the invariant constant `D` for the given reserves.
pub(crate) fn solve_d<F: Real>(kind: CurveKind<F>, reserves: &[F]) -> Result<F, AmmError> {
    kind.validate()?;
    check_reserves(reserves)?;
    let n = reserves.len();
    let n_f = real::<F>(n as f64);
    let sum: F = reserves.iter().fold(F::zero(), |acc, &x| acc + x);
    let prod: F = reserves.iter().fold(F::one(), |acc, &x| acc * x);
    let geomean = prod.powf(F::one() / n_f);
    let lo = n_f * geomean;
    let hi = sum;
    let tol = solver_tolerance::<F>();
    if lo >= hi {
        // Balanced pool: D equals the reserve sum exactly.
        return Ok(hi);
    }
    newton_bisect(
        |d| residual_and_derivative(kind, reserves, d),
        lo,
        hi,
        hi,
        tol,
    )
}

/// With `D` fixed, solve for the new balance of the output token after the
/// input-side balance has been set to `new_in`.
///
/// Two-token pools only. The root is bracketed by `(0, D^2 / (4 * new_in)]`:
/// the residual is negative at zero and non-negative at the cap, where
/// `K0 = 1`.
pub(crate) fn solve_out_balance<F: Real>(
    kind: CurveKind<F>,
    d: F,
    new_in: F,
    old_out: F,
) -> Result<F, AmmError> {
    kind.validate()?;
    if !(new_in > F::zero()) || !(d > F::zero()) {
        return Err(AmmError::domain(
            "post-trade input balance and D must be positive".to_string(),
        ));
    }
    let four = real::<F>(4.0);
    let cap = d * d / (four * new_in);
    let tol = solver_tolerance::<F>();
    // The residual increases in `y`; negate it so the bracket carries the
    // orientation `f(lo) >= 0 >= f(hi)` the iteration expects.
    let eval = |y: F| {
        let (f, df, scale) = residual_and_derivative_out(kind, d, new_in, y);
        (-f, -df, scale)
    };
    newton_bisect(eval, F::zero(), cap, old_out.min(cap), tol)
}

/// Residual of the invariant in the output balance `y`, for fixed `D` and
/// input balance `x` (two tokens).
fn residual_and_derivative_out<F: Real>(kind: CurveKind<F>, d: F, x: F, y: F) -> (F, F, F) {
    let four = real::<F>(4.0);
    let sum = x + y;
    let prod = x * y;
    let d2 = d * d;
    let k0 = prod * four / d2;
    let (k, dk_dk0) = kind.k_and_dk(k0);
    let t1 = k * d * sum;
    let t3 = k * d2;
    let quarter_d2 = d2 / four;
    let f = t1 + prod - t3 - quarter_d2;
    let scale = t1.abs() + prod + t3.abs() + quarter_d2;

    let dk0_dy = x * four / d2;
    let dk_dy = dk_dk0 * dk0_dy;
    let df = dk_dy * (d * sum - d2) + k * d + x;
    (f, df, scale)
}

/// Relative residual of the full invariant at `(reserves, d)`; used by tests
/// and swap post-conditions.
pub(crate) fn relative_residual<F: Real>(kind: CurveKind<F>, reserves: &[F], d: F) -> F {
    let (f, scale) = residual(kind, reserves, d);
    if scale > F::zero() {
        (f / scale).abs()
    } else {
        f.abs()
    }
}

/// Spot price of token 0 in units of token 1 from implicit differentiation
/// of the invariant level curve at fixed `D` (two tokens).
pub(crate) fn spot_price<F: Real>(kind: CurveKind<F>, reserves: &[F], d: F) -> Result<F, AmmError> {
    if reserves.len() != 2 {
        return Err(AmmError::UnsupportedPoolSize(reserves.len()));
    }
    let (x, y) = (reserves[0], reserves[1]);
    let four = real::<F>(4.0);
    let d2 = d * d;
    let k0 = x * y * four / d2;
    let (k, dk_dk0) = kind.k_and_dk(k0);
    let common = d * (x + y) - d2;
    let phi_x = dk_dk0 * (k0 / x) * common + k * d + y;
    let phi_y = dk_dk0 * (k0 / y) * common + k * d + x;
    Ok(phi_x / phi_y)
}
