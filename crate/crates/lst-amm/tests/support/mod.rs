//! Test-only brute-force oracles, written directly from the invariant
//! equation and kept independent of the solver implementation under test.

/// Invariant residual `lhs - rhs` evaluated literally:
/// `K D^(N-1) sum + prod` versus `K D^N + (D/N)^N`.
pub fn invariant_gap(reserves: &[f64], amp: f64, gamma: Option<f64>, d: f64) -> f64 {
    let n = reserves.len() as f64;
    let sum: f64 = reserves.iter().sum();
    let prod: f64 = reserves.iter().product();
    let k0 = prod / d.powf(n) * n.powf(n);
    let k = match gamma {
        None => amp * k0,
        Some(g) => amp * k0 * g * g / ((g + 1.0 - k0) * (g + 1.0 - k0)),
    };
    (k * d.powf(n - 1.0) * sum + prod) - (k * d.powf(n) + (d / n).powf(n))
}

/// Plain bisection for `D` on `[N * geomean, sum]`, where the gap changes
/// sign.
pub fn bisect_d(reserves: &[f64], amp: f64, gamma: Option<f64>) -> f64 {
    let n = reserves.len() as f64;
    let prod: f64 = reserves.iter().product();
    let mut lo = n * prod.powf(1.0 / n);
    let mut hi = reserves.iter().sum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if invariant_gap(reserves, amp, gamma, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Plain bisection for the post-trade output balance on `(0, D^2/(4 x_in)]`
/// with `D` fixed; two-token pools.
pub fn bisect_out_balance(x_in: f64, amp: f64, gamma: Option<f64>, d: f64) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = d * d / (4.0 * x_in);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if invariant_gap(&[x_in, mid], amp, gamma, d) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
