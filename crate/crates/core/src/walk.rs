//! Endpoint, touch and no-touch probabilities on the binary tree, and the
//! execution-price distribution of the passive-then-aggressive strategy.
//!
//! Conventions used throughout: the walk starts at level 0 and makes `n`
//! fair ±1 steps; the resting buy order sits `k` ticks below the start, at
//! level `-k`. A sell order is the mirror image and is handled by callers
//! as a sign flip on output.

use num_traits::Zero;

use crate::engine::Engine;
use crate::scalar::{int, Scalar};
use crate::Scenario;

/// Largest endpoint from which touching level `-k` is still possible.
///
/// A path that touches spends at least `k` steps getting down, leaving at
/// most `n - k` up moves, so its endpoint is at most `n - 2k`.
pub fn critical_r(n: u32, k: u32) -> i64 {
    n as i64 - 2 * k as i64
}

/// `P_n(r)`: probability of ending at level `r` after `n` steps.
///
/// Returns exactly zero for unreachable `r` (parity mismatch or
/// `|r| > n`) rather than failing, so sums may range over any integers.
pub fn endpoint_prob<E: Engine>(n: u32, r: i64) -> E::Num {
    assert!(n >= 1, "walk length must be at least 1");
    E::endpoint_prob(n, r)
}

/// Probability that the walk touches the limit level `-k` at some step
/// and then ends at `r`. Piecewise in `r`:
///
/// * `r <= -k` — every path ending there has touched: `P_n(r)`;
/// * `-k < r <= n - 2k` — reflection across the limit level: `P_n(2k + r)`;
/// * `r > n - 2k` — past the critical endpoint, no touching path exists.
///
/// # Panics
///
/// If `n == 0` or `k == 0`. A touch at the start level is degenerate;
/// callers treat `k = 0` as immediate execution.
pub fn touch_prob<E: Engine>(n: u32, r: i64, k: u32) -> E::Num {
    assert!(n >= 1, "walk length must be at least 1");
    assert!(k >= 1, "touch level must be at least one tick away");
    let limit = -(k as i64);
    if r <= limit {
        E::endpoint_prob(n, r)
    } else if r <= critical_r(n, k) {
        E::endpoint_prob(n, 2 * k as i64 + r)
    } else {
        E::Num::zero()
    }
}

/// Probability of ending at `r` with the whole path staying above `-k`:
/// `P_n(r) - P_n(r | touch)`.
///
/// # Panics
///
/// Same contract as [`touch_prob`].
pub fn no_touch_prob<E: Engine>(n: u32, r: i64, k: u32) -> E::Num {
    endpoint_prob::<E>(n, r) - touch_prob::<E>(n, r, k)
}

/// Full law of the strategy's execution price: one atom at the limit
/// level `-k` carrying the passive-fill mass, plus one atom per endpoint
/// the clean-up can finish at.
#[derive(Debug, Clone, PartialEq)]
pub struct ExecutionDistribution<T> {
    n: u32,
    k: u32,
    passive_mass: T,
    aggressive: Vec<(i64, T)>,
}

impl<T: Scalar> ExecutionDistribution<T> {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Level of the resting order, `-k`.
    pub fn passive_level(&self) -> i64 {
        -(self.k as i64)
    }

    /// Probability that the order fills passively.
    pub fn passive_mass(&self) -> &T {
        &self.passive_mass
    }

    /// Clean-up outcomes `(r, mass)`, ascending in `r`; masses are the
    /// no-touch probabilities.
    pub fn aggressive(&self) -> &[(i64, T)] {
        &self.aggressive
    }

    /// Sums every atom; exactly one in the exact engine.
    pub fn total_mass(&self) -> T {
        self.aggressive
            .iter()
            .fold(self.passive_mass.clone(), |acc, (_, m)| acc + m.clone())
    }

    /// Expected execution price (cost-signed: negative means the order
    /// filled below the start price).
    pub fn mean(&self) -> T {
        self.aggressive.iter().fold(
            int::<T>(self.passive_level()) * self.passive_mass.clone(),
            |acc, (r, m)| acc + int::<T>(*r) * m.clone(),
        )
    }

    /// Second moment of the execution price about zero.
    pub fn second_moment(&self) -> T {
        let lvl = self.passive_level();
        self.aggressive.iter().fold(
            int::<T>(lvl * lvl) * self.passive_mass.clone(),
            |acc, (r, m)| acc + int::<T>(r * r) * m.clone(),
        )
    }
}

/// Distribution of execution prices for the scenario.
///
/// The passive atom is computed as the total touch mass
/// `Σ_r P_n(r | touch)`, not as one minus the rest, so the masses summing
/// to one is a real cross-check and not an identity of the construction.
///
/// # Panics
///
/// If `k == 0` (no resting order to speak of).
pub fn execution_distribution<E: Engine>(scenario: Scenario) -> ExecutionDistribution<E::Num> {
    let (n, k) = (scenario.n(), scenario.k());
    assert!(k >= 1, "distribution needs a resting order, k >= 1");
    let limit = -(k as i64);
    let mut passive_mass = E::Num::zero();
    let mut r = -(n as i64);
    while r <= n as i64 {
        passive_mass = passive_mass + touch_prob::<E>(n, r, k);
        r += 2;
    }
    let aggressive = E::endpoint_probs(n, limit + 1, n as i64)
        .into_iter()
        .map(|(r, _)| (r, no_touch_prob::<E>(n, r, k)))
        .collect();
    ExecutionDistribution {
        n,
        k,
        passive_mass,
        aggressive,
    }
}
