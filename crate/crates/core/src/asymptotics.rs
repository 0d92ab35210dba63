//! Closed-form large-n approximations: execution variance in `k`, the √n
//! time scaling of price dispersion, and erf-form fill probabilities.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("sigma must be positive, got {0}")]
    NonPositiveSigma(f64),
    #[error("tau must be positive, got {0}")]
    NonPositiveTau(f64),
    #[error("sample time must be positive, got {0}")]
    NonPositiveSampleTime(f64),
    #[error("limit distance must be positive, got {0}")]
    NonPositiveLevel(f64),
    #[error("exponent fit needs at least {needed} distinct time ratios, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}

/// Approximate execution variance `4k√(n/2π) - k²`, clamped to `[0, n]`.
///
/// For `k >= n` the level can be reached at the very last step at best and
/// the execution variance equals the price variance `n`. The lower clamp
/// is forced by non-negativity: the quadratic goes negative well before
/// `k` reaches `n`.
pub fn variance_approx(n: u32, k: u32) -> f64 {
    assert!(n >= 1, "walk length must be at least 1");
    let nf = n as f64;
    if k >= n {
        return nf;
    }
    let kf = k as f64;
    let raw = 4.0 * kf * (nf / (2.0 * PI)).sqrt() - kf * kf;
    raw.clamp(0.0, nf)
}

/// Dispersion of the execution price over a slice with price dispersion
/// `sigma_t`: `√(4·k_abs·σ(T)/√2π)`, with `k_abs` in absolute price units.
///
/// # Panics
///
/// If `k_abs < 0` or `sigma_t <= 0`.
pub fn execution_stdev_approx(k_abs: f64, sigma_t: f64) -> f64 {
    assert!(k_abs >= 0.0, "limit distance must be non-negative");
    assert!(sigma_t > 0.0, "price dispersion must be positive");
    (4.0 * k_abs * sigma_t / (2.0 * PI).sqrt()).sqrt()
}

/// Integral form of the fill probability on the lattice:
/// `1 - erf(k/√(2n))`.
///
/// For `n >= 100` with `n` and `k` of different parity this tracks the
/// exact lattice value to within 1e-4 at the sizes the tests sample
/// (the gap shrinks roughly like 1/n).
pub fn fill_prob_asymptotic(n: u32, k: u32) -> f64 {
    assert!(n >= 1, "walk length must be at least 1");
    1.0 - libm::erf(k as f64 / (2.0 * n as f64).sqrt())
}

/// Fill probability after an arbitrary horizon `t = τT`:
/// `1 - erf(k_abs / (σ(T)·√(2τ)))`. A horizon τ → ∞ fills with
/// probability one.
pub fn fill_prob_time(k_abs: f64, sigma_t: f64, tau: f64) -> Result<f64, AsymptoticsError> {
    if sigma_t <= 0.0 || sigma_t.is_nan() {
        return Err(AsymptoticsError::NonPositiveSigma(sigma_t));
    }
    if tau <= 0.0 || tau.is_nan() {
        return Err(AsymptoticsError::NonPositiveTau(tau));
    }
    if k_abs < 0.0 || k_abs.is_nan() {
        return Err(AsymptoticsError::NonPositiveLevel(k_abs));
    }
    Ok(1.0 - libm::erf(k_abs / (sigma_t * (2.0 * tau).sqrt())))
}

/// Least-squares slope of `ln σ_X` against `ln t` over the given time
/// ratios, holding the limit distance fixed.
///
/// Price dispersion grows like √t and the execution dispersion like the
/// square root of that, so the fitted exponent is 1/4 up to fitting noise.
/// Needs at least three distinct positive ratios.
pub fn risk_time_exponent(k_abs: f64, taus: &[f64]) -> Result<f64, AsymptoticsError> {
    if k_abs <= 0.0 || k_abs.is_nan() {
        return Err(AsymptoticsError::NonPositiveLevel(k_abs));
    }
    let mut distinct: Vec<f64> = Vec::with_capacity(taus.len());
    for &tau in taus {
        if tau <= 0.0 || tau.is_nan() {
            return Err(AsymptoticsError::NonPositiveTau(tau));
        }
        if !distinct.contains(&tau) {
            distinct.push(tau);
        }
    }
    if distinct.len() < 3 {
        return Err(AsymptoticsError::TooFewPoints {
            needed: 3,
            got: distinct.len(),
        });
    }
    // baseline σ(T) = 1; the slope does not depend on it or on k_abs
    let pts: Vec<(f64, f64)> = distinct
        .iter()
        .map(|&tau| {
            let sigma_at_tau = tau.sqrt();
            (tau.ln(), execution_stdev_approx(k_abs, sigma_at_tau).ln())
        })
        .collect();
    let m = pts.len() as f64;
    let mean_x = pts.iter().map(|(x, _)| x).sum::<f64>() / m;
    let mean_y = pts.iter().map(|(_, y)| y).sum::<f64>() / m;
    let cov: f64 = pts.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let var: f64 = pts.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum();
    Ok(cov / var)
}

/// A slice of duration `sample_time` over which the price disperses with
/// standard deviation `sigma`, observed at the horizon `tau` (in units of
/// the sample time). For an n-step lattice walk, `sigma = √n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeScaling {
    sample_time: f64,
    sigma: f64,
    tau: f64,
}

impl TimeScaling {
    pub fn new(sample_time: f64, sigma: f64, tau: f64) -> Result<Self, AsymptoticsError> {
        if sample_time <= 0.0 || sample_time.is_nan() {
            return Err(AsymptoticsError::NonPositiveSampleTime(sample_time));
        }
        if sigma <= 0.0 || sigma.is_nan() {
            return Err(AsymptoticsError::NonPositiveSigma(sigma));
        }
        if tau <= 0.0 || tau.is_nan() {
            return Err(AsymptoticsError::NonPositiveTau(tau));
        }
        Ok(TimeScaling {
            sample_time,
            sigma,
            tau,
        })
    }

    /// Scaling of an n-step walk taking one time unit per step.
    pub fn for_walk(n: u32, tau: f64) -> Result<Self, AsymptoticsError> {
        Self::new(n as f64, (n as f64).sqrt(), tau)
    }

    pub fn sample_time(&self) -> f64 {
        self.sample_time
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Price dispersion over the horizon `τT`: `σ(T)·√τ`.
    pub fn horizon_sigma(&self) -> f64 {
        self.sigma * self.tau.sqrt()
    }

    /// Fill probability of an order resting `k_abs` away over the horizon.
    pub fn fill_probability(&self, k_abs: f64) -> Result<f64, AsymptoticsError> {
        fill_prob_time(k_abs, self.sigma, self.tau)
    }

    /// Execution dispersion of the strategy over the horizon.
    pub fn execution_stdev(&self, k_abs: f64) -> f64 {
        execution_stdev_approx(k_abs, self.horizon_sigma())
    }
}
