//! Independent oracles: seeded Monte Carlo path simulation and exhaustive
//! 2^n enumeration of the passive-then-aggressive strategy.
//!
//! Reproducibility contract: [`simulate`] is a pure function of
//! `(scenario, paths, seed)`. Each path draws its steps from its own
//! ChaCha8 stream keyed by the seed and the path index, and the
//! accumulators are exact integers, so the parallel reduction is
//! order-insensitive and the report is bit-identical across runs,
//! platforms and thread counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::analytics::ExecutionStats;
use crate::engine::EngineTag;
use crate::{ExactNum, Scenario};

/// Hard ceiling on the walk length [`enumerate`] accepts; the sweep visits
/// 2^n paths.
pub const DEFAULT_ENUM_BUDGET: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("k = 0 rests at the start price and fills immediately; nothing to simulate")]
    DegenerateLevel,
    #[error("need at least one path")]
    NoPaths,
    #[error("enumerating 2^{n} paths exceeds the 2^{max} budget")]
    BudgetExceeded { n: u32, max: u32 },
}

/// Empirical estimates of gain, variance and fill probability, with the
/// inputs needed to reproduce them.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub paths: u64,
    pub seed: u64,
    /// Sample mean of profit-signed outcomes.
    pub mean_gain_hat: f64,
    /// Unbiased sample variance of the outcomes.
    pub variance_hat: f64,
    pub fill_prob_hat: f64,
    /// `sample stdev / √paths`.
    pub se_mean: f64,
    /// Binomial standard error of the fill frequency.
    pub se_fill: f64,
    pub engine: EngineTag,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    outcome_sum: i128,
    outcome_sq_sum: i128,
    fills: u64,
}

impl Tally {
    fn record(mut self, outcome: i64, filled: bool) -> Self {
        self.outcome_sum += outcome as i128;
        self.outcome_sq_sum += (outcome as i128) * (outcome as i128);
        self.fills += u64::from(filled);
        self
    }

    fn merge(mut self, other: Self) -> Self {
        self.outcome_sum += other.outcome_sum;
        self.outcome_sq_sum += other.outcome_sq_sum;
        self.fills += other.fills;
        self
    }
}

fn path_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Outcome of one simulated path: the order fills at `-k` at the first
/// step the position reaches it (unit steps make touch and fill coincide),
/// otherwise the clean-up executes at the final position.
fn path_outcome(n: u32, k: u32, seed: u64, index: u64) -> (i64, bool) {
    let mut rng = path_rng(seed, index);
    let limit = -(k as i64);
    let mut pos = 0i64;
    let mut word = 0u64;
    for step in 0..n {
        if step % 64 == 0 {
            word = rng.next_u64();
        }
        pos += if word & 1 == 1 { 1 } else { -1 };
        word >>= 1;
        if pos == limit {
            return (limit, true);
        }
    }
    (pos, false)
}

/// Monte Carlo estimate of the execution statistics over `paths`
/// independent walks.
pub fn simulate(scenario: Scenario, paths: u64, seed: u64) -> Result<McReport, SimError> {
    let (n, k) = (scenario.n(), scenario.k());
    if k == 0 {
        return Err(SimError::DegenerateLevel);
    }
    if paths == 0 {
        return Err(SimError::NoPaths);
    }
    let tally = (0..paths)
        .into_par_iter()
        .fold(Tally::default, |t, i| {
            let (outcome, filled) = path_outcome(n, k, seed, i);
            t.record(outcome, filled)
        })
        .reduce(Tally::default, Tally::merge);
    Ok(report_from_tally(tally, paths, seed))
}

fn report_from_tally(t: Tally, paths: u64, seed: u64) -> McReport {
    let count = paths as f64;
    let sum = t.outcome_sum as f64;
    let sq_sum = t.outcome_sq_sum as f64;
    let variance_hat = if paths >= 2 {
        (sq_sum - sum * sum / count) / (count - 1.0)
    } else {
        0.0
    };
    let fill_prob_hat = t.fills as f64 / count;
    McReport {
        paths,
        seed,
        // outcomes are cost-signed; gain flips the sign
        mean_gain_hat: -sum / count,
        variance_hat,
        fill_prob_hat,
        se_mean: (variance_hat / count).sqrt(),
        se_fill: (fill_prob_hat * (1.0 - fill_prob_hat) / count).sqrt(),
        engine: EngineTag::MonteCarlo,
    }
}

/// Endpoint tallies of `paths` simulated free walks (no resting order),
/// keyed by the reachable final levels in ascending order. Shares the
/// per-path RNG streams with [`simulate`].
pub fn endpoint_histogram(n: u32, paths: u64, seed: u64) -> Vec<(i64, u64)> {
    let mut counts = vec![0u64; n as usize + 1];
    for i in 0..paths {
        let mut rng = path_rng(seed, i);
        let mut pos = 0i64;
        let mut word = 0u64;
        for step in 0..n {
            if step % 64 == 0 {
                word = rng.next_u64();
            }
            pos += if word & 1 == 1 { 1 } else { -1 };
            word >>= 1;
        }
        counts[((pos + n as i64) / 2) as usize] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(m, c)| (2 * m as i64 - n as i64, c))
        .collect()
}

/// Walks all 2^n sign sequences and returns exact execution statistics,
/// applying the same fill rule as [`simulate`].
///
/// `k = 0` short-circuits to the immediate-execution statistics.
pub fn enumerate(scenario: Scenario) -> Result<ExecutionStats<ExactNum>, SimError> {
    enumerate_with_budget(scenario, DEFAULT_ENUM_BUDGET)
}

/// [`enumerate`] with a caller-chosen budget on the walk length.
pub fn enumerate_with_budget(
    scenario: Scenario,
    max_n: u32,
) -> Result<ExecutionStats<ExactNum>, SimError> {
    let (n, k) = (scenario.n(), scenario.k());
    let max = max_n.min(63); // the sweep masks must fit in u64
    if n > max {
        return Err(SimError::BudgetExceeded { n, max });
    }
    if k == 0 {
        return Ok(ExecutionStats {
            mean_gain: ExactNum::zero(),
            cost_no_touch: ExactNum::zero(),
            cost_touch: ExactNum::zero(),
            variance: ExactNum::zero(),
            fill_probability: ExactNum::one(),
            engine: EngineTag::Enumeration,
        });
    }

    let limit = -(k as i64);
    let mut outcome_sum = 0i128;
    let mut outcome_sq_sum = 0i128;
    let mut no_touch_sum = 0i128;
    let mut fills = 0u64;
    for mask in 0..(1u64 << n) {
        let mut pos = 0i64;
        let mut filled = false;
        for step in 0..n {
            pos += if (mask >> step) & 1 == 1 { 1 } else { -1 };
            if pos == limit {
                filled = true;
                break;
            }
        }
        let outcome = if filled { limit } else { pos };
        outcome_sum += outcome as i128;
        outcome_sq_sum += (outcome as i128) * (outcome as i128);
        if filled {
            fills += 1;
        } else {
            no_touch_sum += pos as i128;
        }
    }

    let den = BigInt::one() << n;
    let ratio = |num: i128| ExactNum::new(BigInt::from(num), den.clone());
    let mean_outcome = ratio(outcome_sum);
    let variance = ratio(outcome_sq_sum) - mean_outcome.clone() * mean_outcome.clone();
    Ok(ExecutionStats {
        mean_gain: -mean_outcome,
        cost_no_touch: ratio(no_touch_sum),
        cost_touch: ratio(limit as i128 * fills as i128),
        variance,
        fill_probability: ratio(fills as i128),
        engine: EngineTag::Enumeration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn sc(n: u32, k: u32) -> Scenario {
        Scenario::new(n, k).unwrap()
    }

    fn frac(num: i64, den: i64) -> ExactNum {
        ExactNum::new(num.into(), den.into())
    }

    #[test]
    fn enumerate_four_steps() {
        let stats = enumerate(sc(4, 1)).unwrap();
        assert_eq!(stats.mean_gain, ExactNum::zero());
        assert_eq!(stats.variance, frac(19, 8));
        assert_eq!(stats.fill_probability, frac(10, 16));
        assert_eq!(stats.cost_no_touch, frac(10, 16));
        assert_eq!(stats.cost_touch, frac(-10, 16));
        assert_eq!(stats.engine, EngineTag::Enumeration);
    }

    #[test]
    fn enumerate_single_step() {
        let stats = enumerate(sc(1, 1)).unwrap();
        assert_eq!(stats.mean_gain, ExactNum::zero());
        assert_eq!(stats.variance, frac(1, 1));
        assert_eq!(stats.fill_probability, frac(1, 2));
    }

    #[test]
    fn enumerate_k_zero_is_immediate() {
        let stats = enumerate(sc(20, 0)).unwrap();
        assert_eq!(stats.variance, ExactNum::zero());
        assert_eq!(stats.fill_probability, ExactNum::one());
    }

    #[test]
    fn enumerate_budget_guard() {
        assert_eq!(
            enumerate(sc(25, 1)),
            Err(SimError::BudgetExceeded { n: 25, max: 24 })
        );
        assert!(enumerate_with_budget(sc(25, 1), 25).is_ok());
    }

    #[test]
    fn simulate_rejects_degenerate_inputs() {
        assert_eq!(simulate(sc(10, 0), 100, 7), Err(SimError::DegenerateLevel));
        assert_eq!(simulate(sc(10, 1), 0, 7), Err(SimError::NoPaths));
    }

    #[test]
    fn simulate_is_reproducible() {
        let a = simulate(sc(50, 3), 20_000, 99).unwrap();
        let b = simulate(sc(50, 3), 20_000, 99).unwrap();
        assert_eq!(a, b);
        let c = simulate(sc(50, 3), 20_000, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn simulate_matches_serial_fold() {
        let n = 37u32;
        let k = 2u32;
        let (paths, seed) = (10_000u64, 4242u64);
        let serial = (0..paths).fold(Tally::default(), |t, i| {
            let (outcome, filled) = path_outcome(n, k, seed, i);
            t.record(outcome, filled)
        });
        let expected = report_from_tally(serial, paths, seed);
        let parallel = simulate(sc(n, k), paths, seed).unwrap();
        assert_eq!(parallel, expected);
    }

    #[test]
    fn first_touch_predicates_agree() {
        // fill iff running minimum <= -k iff the position hits -k exactly
        for k in 1..=4u32 {
            for i in 0..2_000u64 {
                let n = 31;
                let mut rng = path_rng(5150, i);
                let mut pos = 0i64;
                let mut min_pos = 0i64;
                let mut hit_exact = false;
                let mut word = 0u64;
                for step in 0..n {
                    if step % 64 == 0 {
                        word = rng.next_u64();
                    }
                    pos += if word & 1 == 1 { 1 } else { -1 };
                    word >>= 1;
                    min_pos = min_pos.min(pos);
                    hit_exact |= pos == -(k as i64);
                }
                assert_eq!(min_pos <= -(k as i64), hit_exact, "k={k} path={i}");
            }
        }
    }

    #[test]
    fn simulate_tracks_enumeration() {
        let stats = enumerate(sc(8, 2)).unwrap();
        let mc = simulate(sc(8, 2), 200_000, 31).unwrap();
        let fill = stats.fill_probability.to_f64().unwrap();
        assert!((mc.fill_prob_hat - fill).abs() <= 3.0 * mc.se_fill);
        assert!(mc.mean_gain_hat.abs() <= 3.0 * mc.se_mean);
    }

    #[test]
    fn simulate_million_path_spot_checks() {
        let mc = simulate(sc(10, 1), 1_000_000, 77).unwrap();
        assert!((mc.fill_prob_hat - 772.0 / 1024.0).abs() <= 3.0 * mc.se_fill);

        let mc = simulate(sc(4, 1), 1_000_000, 78).unwrap();
        // se of the sample variance from the exact fourth moment:
        // E[δ⁴] = (256 + 3·16 + 10)/16, so var(δ²) = E[δ⁴] - (19/8)²
        let se_var = ((314.0 / 16.0 - (19.0f64 / 8.0).powi(2)) / 1e6).sqrt();
        assert!((mc.variance_hat - 19.0 / 8.0).abs() <= 3.0 * se_var);
    }

    #[test]
    fn histogram_counts_paths() {
        let hist = endpoint_histogram(10, 5_000, 1);
        assert_eq!(hist.len(), 11);
        assert_eq!(hist.iter().map(|(_, c)| c).sum::<u64>(), 5_000);
        assert_eq!(hist[0].0, -10);
        assert_eq!(hist[10].0, 10);
    }
}
