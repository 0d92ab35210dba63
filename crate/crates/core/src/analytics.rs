//! Expected cost, variance and fill probability of the static
//! passive-then-aggressive strategy, in exact arithmetic.
//!
//! The central fact is that the expected gain of resting at any level `k`
//! is exactly zero: the benefit of the passive fills equals the clean-up
//! cost of the unfilled paths. Everything here admits `k = 0`, which means
//! immediate aggressive execution (zero cost, zero variance, fill
//! probability one).

use num_traits::Zero;

use crate::engine::{Engine, EngineTag};
use crate::scalar::int;
use crate::walk::critical_r;
use crate::Scenario;

/// Per-scenario execution statistics with engine provenance.
///
/// Sign conventions: `mean_gain` is profit-positive, the `cost_*` fields
/// keep the price-level sign (a passive buy fill at `-k` contributes
/// negatively to `cost_touch`).
#[derive(Debug, Clone, PartialEq)]
pub struct ExecutionStats<T> {
    /// Expected gain of the strategy vs. crossing immediately; identically
    /// zero in exact arithmetic.
    pub mean_gain: T,
    /// Expected clean-up price over the paths that never touch the level.
    pub cost_no_touch: T,
    /// Expected execution-price contribution of the passive fills,
    /// `-k` times the fill probability.
    pub cost_touch: T,
    /// Variance of the execution price.
    pub variance: T,
    /// Probability the resting order fills within the window.
    pub fill_probability: T,
    pub engine: EngineTag,
}

/// Σ w(r)·P_n(r) over reachable `r` in `lo..=hi`.
fn direct_sum<E: Engine>(n: u32, lo: i64, hi: i64, w: impl Fn(i64) -> i64) -> E::Num {
    E::endpoint_probs(n, lo, hi)
        .into_iter()
        .fold(E::Num::zero(), |acc, (r, p)| acc + int::<E::Num>(w(r)) * p)
}

fn direct_mass<E: Engine>(n: u32, lo: i64, hi: i64) -> E::Num {
    E::endpoint_probs(n, lo, hi)
        .into_iter()
        .fold(E::Num::zero(), |acc, (_, p)| acc + p)
}

/// Σ w(r)·P_n(2k + r) over `r` in `lo..=hi`: the reflected row, reindexed
/// back to the original endpoint coordinate.
fn reflected_sum<E: Engine>(n: u32, k: u32, lo: i64, hi: i64, w: impl Fn(i64) -> i64) -> E::Num {
    let off = 2 * k as i64;
    E::endpoint_probs(n, lo + off, hi + off)
        .into_iter()
        .fold(E::Num::zero(), |acc, (arg, p)| {
            acc + int::<E::Num>(w(arg - off)) * p
        })
}

fn reflected_mass<E: Engine>(n: u32, k: u32, lo: i64, hi: i64) -> E::Num {
    let off = 2 * k as i64;
    E::endpoint_probs(n, lo + off, hi + off)
        .into_iter()
        .fold(E::Num::zero(), |acc, (_, p)| acc + p)
}

/// Expected clean-up price when the limit level is never reached:
/// Σ r·P_n(r | no touch) over r in (-k, n], in the regrouped two-sum form.
pub fn avg_cost_no_touch<E: Engine>(scenario: Scenario) -> E::Num {
    let (n, k) = (scenario.n(), scenario.k());
    let lo = -(k as i64) + 1;
    let direct = direct_sum::<E>(n, lo, n as i64, |r| r);
    let reflected = reflected_sum::<E>(n, k, lo, critical_r(n, k), |r| r);
    direct - reflected
}

/// Expected execution-price contribution of the passive fills: every
/// touching path executes at `-k`, so this is `-k` times the fill
/// probability.
pub fn avg_cost_touch<E: Engine>(scenario: Scenario) -> E::Num {
    -(int::<E::Num>(scenario.k() as i64) * fill_prob_exact::<E>(scenario))
}

/// Expected gain of resting at level `k` instead of crossing immediately:
/// the negated total of the two cost branches.
///
/// In the exact engine this is the rational zero for every scenario —
/// there is no optimal resting level under a symmetric walk.
pub fn net_gain<E: Engine>(scenario: Scenario) -> E::Num {
    -(avg_cost_no_touch::<E>(scenario) + avg_cost_touch::<E>(scenario))
}

/// Variance of the execution price, in the form that makes the dependence
/// on `k` explicit: a linear tail term, a quadratic tail correction and a
/// near-level sum.
///
/// The near-level sum carries the `k·r` cross weight. It collapses to
/// Σ r²·P_n(r) only when `n` and `k` have different parity, where the
/// r ↔ -r cancellation also kills the `r = k` endpoint; keeping the cross
/// term makes the form exact for every parity combination.
pub fn variance_exact<E: Engine>(scenario: Scenario) -> E::Num {
    let (n, ki) = (scenario.n(), scenario.k() as i64);
    let tail_level = direct_sum::<E>(n, ki + 1, n as i64, |r| r);
    let tail_mass = direct_mass::<E>(n, ki + 1, n as i64);
    let near = direct_sum::<E>(n, -ki + 1, ki, |r| r * (r + ki));
    int::<E::Num>(4 * ki) * tail_level - int::<E::Num>(2 * ki * ki) * tail_mass + near
}

/// The same variance without any regrouping: (r² + kr)-weighted no-touch
/// decomposition, direct row minus reflected row.
pub fn variance_reflection_form<E: Engine>(scenario: Scenario) -> E::Num {
    let (n, k) = (scenario.n(), scenario.k());
    let ki = k as i64;
    let lo = -ki + 1;
    let direct = direct_sum::<E>(n, lo, n as i64, |r| r * (r + ki));
    let reflected = reflected_sum::<E>(n, k, lo, critical_r(n, k), |r| r * (r + ki));
    direct - reflected
}

/// `(σ²(no touch), σ²(touch))`: the two contributions to the execution
/// variance. The touch side is `k²` times the fill probability (every
/// touching path lands on the same outcome `-k`), which also equals
/// `-k` times [`avg_cost_touch`]; the pair sums to [`variance_exact`].
pub fn variance_components<E: Engine>(scenario: Scenario) -> (E::Num, E::Num) {
    let (n, k) = (scenario.n(), scenario.k());
    let ki = k as i64;
    let lo = -ki + 1;
    let no_touch = direct_sum::<E>(n, lo, n as i64, |r| r * r)
        - reflected_sum::<E>(n, k, lo, critical_r(n, k), |r| r * r);
    let touch = int::<E::Num>(ki * ki) * fill_prob_exact::<E>(scenario);
    (no_touch, touch)
}

/// Probability that the resting order fills within the window: mass of
/// paths ending at or below `-k`, plus the reflected mass of paths that
/// touch and bounce back above.
pub fn fill_prob_exact<E: Engine>(scenario: Scenario) -> E::Num {
    let (n, k) = (scenario.n(), scenario.k());
    let ki = k as i64;
    let below = direct_mass::<E>(n, -(n as i64), -ki);
    let bounced = reflected_mass::<E>(n, k, -ki + 1, critical_r(n, k));
    below + bounced
}

/// Every statistic for the scenario under one engine. Equivalent to
/// calling each operation separately, sharing the fill-probability sum.
pub fn execution_stats<E: Engine>(scenario: Scenario) -> ExecutionStats<E::Num> {
    let cost_no_touch = avg_cost_no_touch::<E>(scenario);
    let fill_probability = fill_prob_exact::<E>(scenario);
    let cost_touch = -(int::<E::Num>(scenario.k() as i64) * fill_probability.clone());
    let mean_gain = -(cost_no_touch.clone() + cost_touch.clone());
    ExecutionStats {
        mean_gain,
        cost_no_touch,
        cost_touch,
        variance: variance_exact::<E>(scenario),
        fill_probability,
        engine: E::TAG,
    }
}
