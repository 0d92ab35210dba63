//! Execution analytics for a resting limit order when the price follows a
//! symmetric ±1 random walk on a tick grid.
//!
//! The strategy under study posts a buy order `k` ticks below the start
//! price for a window of `n` steps and crosses the spread at the final
//! price if the order never fills. The crate computes, exactly:
//!
//! * endpoint, touch and no-touch probabilities on the binary tree
//!   ([`walk`]);
//! * expected cost, variance and fill probability of the strategy
//!   ([`analytics`]) — including the fact that the expected gain is zero
//!   at every level, so no resting level beats crossing immediately;
//! * closed-form large-`n` approximations and erf-form fill probabilities
//!   ([`asymptotics`]);
//! * Monte Carlo and exhaustive-enumeration estimates used as independent
//!   oracles ([`sim`]).
//!
//! Core routines are generic over the scalar type through the [`Engine`]
//! trait. [`Exact`] evaluates in arbitrary-precision rationals
//! (bit-reproducible; the default up to `n = 2000`), [`LogSpace`] works in
//! `f64` via log-space binomials for larger walks.
//!
//! ```
//! use tickwalk::{analytics, Exact, ExactNum, Scenario};
//! use num_traits::Zero;
//!
//! let scenario = Scenario::new(10, 1).unwrap();
//! let stats = analytics::execution_stats::<Exact>(scenario);
//! assert_eq!(stats.mean_gain, ExactNum::zero());
//! assert_eq!(stats.fill_probability, ExactNum::new(772.into(), 1024.into()));
//! ```

pub mod analytics;
pub mod asymptotics;
mod engine;
mod scalar;
pub mod sim;
pub mod walk;

use thiserror::Error;

pub use engine::{binom, preferred_engine, Engine, EngineTag, Exact, LogSpace, EXACT_N_LIMIT};
pub use scalar::Scalar;

pub use analytics::ExecutionStats;
pub use asymptotics::{AsymptoticsError, TimeScaling};
pub use sim::{McReport, SimError};
pub use walk::ExecutionDistribution;

/// Scalar type of the exact engine.
pub type ExactNum = num_rational::BigRational;
/// Scalar type of the log-space engine.
pub type LogNum = f64;

/// Walk lengths above this are rejected; weights like r² must stay within
/// i64 during summation.
pub const MAX_N: u32 = 1 << 30;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("walk length must be at least 1")]
    ZeroLength,
    #[error("walk length {0} exceeds the supported maximum {MAX_N}")]
    LengthTooLarge(u32),
    #[error("limit level distance {k} outside 0..={n}")]
    LevelOutOfRange { n: u32, k: u32 },
}

/// The coordinate system of every formula in this crate: a walk of `n`
/// fair ±1 steps and a resting order `k` ticks below the start price.
///
/// `k = 0` is allowed and means the order executes immediately at the
/// start price.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    n: u32,
    k: u32,
}

impl Scenario {
    pub fn new(n: u32, k: u32) -> Result<Self, ScenarioError> {
        if n == 0 {
            return Err(ScenarioError::ZeroLength);
        }
        if n > MAX_N {
            return Err(ScenarioError::LengthTooLarge(n));
        }
        if k > n {
            return Err(ScenarioError::LevelOutOfRange { n, k });
        }
        Ok(Scenario { n, k })
    }

    /// Number of steps in the walk.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Tick distance from the start price to the resting order.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Price level of the resting order, `-k`.
    pub fn limit_level(&self) -> i64 {
        -(self.k as i64)
    }
}
