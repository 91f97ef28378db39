use crate::error::{Error, Result};
use crate::special::{ln_gamma, regularized_gamma_p};

/// Limiting density of the `k`-th smallest rescaled gap,
/// `Jᵏ/(4^{k−1} Γ(k)) x^{4k−1} e^{−J x⁴/4}`.
///
/// Returns NaN for `k = 0` or `J ≤ 0` and zero for `x ≤ 0`.
pub fn limit_gap_density(k: usize, j: f64, x: f64) -> f64 {
    if k == 0 || !(j > 0.0) || x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 || x.is_infinite() {
        return 0.0;
    }
    let kf = k as f64;
    let log = kf * j.ln() - (kf - 1.0) * 4f64.ln() - ln_gamma(kf) + (4.0 * kf - 1.0) * x.ln() - 0.25 * j * x.powi(4);
    log.exp()
}

/// Limiting CDF of the `k`-th smallest rescaled gap, `P(k, J x⁴/4)`.
pub fn limit_gap_cdf(k: usize, j: f64, x: f64) -> f64 {
    if k == 0 || !(j > 0.0) || x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    regularized_gamma_p(k as f64, 0.25 * j * x.powi(4))
}

/// Mean of the limiting law, `(4/J)^{1/4} Γ(k + 1/4)/Γ(k)`.
pub fn limit_gap_mean(k: usize, j: f64) -> f64 {
    if k == 0 || !(j > 0.0) {
        return f64::NAN;
    }
    let kf = k as f64;
    (4.0 / j).powf(0.25) * (ln_gamma(kf + 0.25) - ln_gamma(kf)).exp()
}

/// Inverse of [`limit_gap_cdf`] on `(0, 1)`.
pub fn limit_gap_quantile(k: usize, j: f64, p: f64) -> f64 {
    if k == 0 || !(j > 0.0) || !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return 0.0;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    if k == 1 {
        return (-4.0 * (-p).ln_1p() / j).powf(0.25);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while limit_gap_cdf(k, j, hi) < p {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if limit_gap_cdf(k, j, mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Limiting probability that `t_ℓ ∈ (x_ℓ, y_ℓ)` for every `ℓ = 1..k`:
///
/// `(e^{−J x_k⁴/4} − e^{−J y_k⁴/4}) · J^{k−1}/4^{k−1} · Π_{ℓ<k} (y_ℓ⁴ − x_ℓ⁴)`.
///
/// The windows must satisfy `0 < x₁ < y₁ < x₂ < … < x_k < y_k`; only `y_k`
/// may be infinite.
pub fn joint_gap_window_probability(k: usize, j: f64, windows: &[(f64, f64)]) -> Result<f64> {
    if k == 0 || windows.len() != k {
        return Err(Error::arg(format!("expected {k} windows, got {}", windows.len())));
    }
    if !(j > 0.0 && j.is_finite()) {
        return Err(Error::arg(format!("J must be positive, got {j}")));
    }
    let mut previous = 0.0;
    for (idx, &(x, y)) in windows.iter().enumerate() {
        let last = idx + 1 == k;
        let y_ok = y.is_finite() || (last && y == f64::INFINITY);
        if !(x > previous && y > x && x.is_finite() && y_ok) {
            return Err(Error::arg(format!("windows are not strictly ordered at position {}", idx + 1)));
        }
        previous = y;
    }
    let (xk, yk) = windows[k - 1];
    let tail = (-0.25 * j * xk.powi(4)).exp() - (-0.25 * j * yk.powi(4)).exp();
    let inner: f64 = windows[..k - 1].iter().map(|&(x, y)| 0.25 * j * (y.powi(4) - x.powi(4))).product();
    Ok(tail * inner)
}
