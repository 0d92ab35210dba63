//! One table builder per subcommand. Walks up to [`tickwalk::EXACT_N_LIMIT`] steps
//! use the exact engine and render rationals; longer walks fall back to
//! the log-space engine and the value columns carry floats.
//!
//! Builders taking raw `(n, k_max)` expect pre-validated bounds (the CLI
//! validates before dispatch) and panic on out-of-range scenarios.

use tickwalk::walk::{endpoint_prob, execution_distribution, no_touch_prob, touch_prob};
use tickwalk::{analytics, asymptotics, sim, Engine, EngineTag, Exact};
use tickwalk::{preferred_engine, LogSpace, Scalar, Scenario};

use crate::table::{Cell, Meta, Table};

/// Scalar that knows how to render itself as a (value, float) column pair.
trait CellScalar: Scalar {
    fn cells(self) -> [Cell; 2];
}

impl CellScalar for tickwalk::ExactNum {
    fn cells(self) -> [Cell; 2] {
        Cell::rational_pair(self)
    }
}

impl CellScalar for f64 {
    fn cells(self) -> [Cell; 2] {
        Cell::float_pair(self)
    }
}

macro_rules! dispatch_engine {
    ($n:expr, $build:ident ( $($arg:expr),* )) => {
        if preferred_engine($n) == EngineTag::Exact {
            $build::<Exact>($($arg),*)
        } else {
            $build::<LogSpace>($($arg),*)
        }
    };
}

const DIST_COLUMNS: [&str; 10] = [
    "kind",
    "level",
    "exec_mass",
    "exec_mass_f64",
    "p_endpoint",
    "p_endpoint_f64",
    "p_touch",
    "p_touch_f64",
    "p_no_touch",
    "p_no_touch_f64",
];

/// Execution-price distribution: one row per clean-up endpoint, then the
/// passive atom at the limit level.
pub fn dist_table(scenario: Scenario) -> Table {
    dispatch_engine!(scenario.n(), dist_table_in(scenario))
}

fn dist_table_in<E: Engine>(scenario: Scenario) -> Table
where
    E::Num: CellScalar,
{
    let (n, k) = (scenario.n(), scenario.k());
    let dist = execution_distribution::<E>(scenario);
    let prob_columns = |r: i64| {
        let mut cells = Vec::with_capacity(6);
        cells.extend(endpoint_prob::<E>(n, r).cells());
        cells.extend(touch_prob::<E>(n, r, k).cells());
        cells.extend(no_touch_prob::<E>(n, r, k).cells());
        cells
    };
    let mut rows = Vec::with_capacity(dist.aggressive().len() + 1);
    for (r, mass) in dist.aggressive() {
        let mut row = vec![Cell::Text("aggressive"), Cell::Int(*r)];
        row.extend(mass.clone().cells());
        row.extend(prob_columns(*r));
        rows.push(row);
    }
    let level = dist.passive_level();
    let mut atom = vec![Cell::Text("passive"), Cell::Int(level)];
    atom.extend(dist.passive_mass().clone().cells());
    atom.extend(prob_columns(level));
    rows.push(atom);
    Table {
        meta: Meta {
            n: Some(n),
            k: Some(k),
            engine: E::TAG,
        },
        columns: DIST_COLUMNS.to_vec(),
        rows,
    }
}

const COST_COLUMNS: [&str; 7] = [
    "k",
    "delta_no_touch",
    "delta_no_touch_f64",
    "delta_touch",
    "delta_touch_f64",
    "net_gain",
    "net_gain_f64",
];

/// Cost branches and net gain for k = 0..=k_max.
pub fn cost_table(n: u32, k_max: u32) -> Table {
    dispatch_engine!(n, cost_table_in(n, k_max))
}

fn cost_table_in<E: Engine>(n: u32, k_max: u32) -> Table
where
    E::Num: CellScalar,
{
    let rows = (0..=k_max)
        .map(|k| {
            let s = Scenario::new(n, k).expect("validated by caller");
            let mut row = vec![Cell::UInt(k as u64)];
            row.extend(analytics::avg_cost_no_touch::<E>(s).cells());
            row.extend(analytics::avg_cost_touch::<E>(s).cells());
            row.extend(analytics::net_gain::<E>(s).cells());
            row
        })
        .collect();
    Table {
        meta: Meta {
            n: Some(n),
            k: Some(k_max),
            engine: E::TAG,
        },
        columns: COST_COLUMNS.to_vec(),
        rows,
    }
}

const VARIANCE_COLUMNS: [&str; 4] = [
    "k",
    "sigma2_exact",
    "sigma2_exact_f64",
    "sigma2_approx_capped",
];

/// Exact and capped-approximate execution variance for k = 0..=k_max.
pub fn variance_table(n: u32, k_max: u32) -> Table {
    dispatch_engine!(n, variance_table_in(n, k_max))
}

fn variance_table_in<E: Engine>(n: u32, k_max: u32) -> Table
where
    E::Num: CellScalar,
{
    let rows = (0..=k_max)
        .map(|k| {
            let s = Scenario::new(n, k).expect("validated by caller");
            let mut row = vec![Cell::UInt(k as u64)];
            row.extend(analytics::variance_exact::<E>(s).cells());
            row.push(Cell::Float(asymptotics::variance_approx(n, k)));
            row
        })
        .collect();
    Table {
        meta: Meta {
            n: Some(n),
            k: Some(k_max),
            engine: E::TAG,
        },
        columns: VARIANCE_COLUMNS.to_vec(),
        rows,
    }
}

const FILL_LATTICE_COLUMNS: [&str; 4] = ["k", "fill_exact", "fill_exact_f64", "fill_erf"];

/// Exact lattice fill probability next to its erf form, for each level in
/// `ks`.
pub fn fillprob_lattice_table(n: u32, ks: &[u32]) -> Table {
    dispatch_engine!(n, fillprob_lattice_table_in(n, ks))
}

fn fillprob_lattice_table_in<E: Engine>(n: u32, ks: &[u32]) -> Table
where
    E::Num: CellScalar,
{
    let rows = ks
        .iter()
        .map(|&k| {
            let s = Scenario::new(n, k).expect("validated by caller");
            let mut row = vec![Cell::UInt(k as u64)];
            row.extend(analytics::fill_prob_exact::<E>(s).cells());
            row.push(Cell::Float(asymptotics::fill_prob_asymptotic(n, k)));
            row
        })
        .collect();
    Table {
        meta: Meta {
            n: Some(n),
            k: ks.last().copied(),
            engine: E::TAG,
        },
        columns: FILL_LATTICE_COLUMNS.to_vec(),
        rows,
    }
}

const FILL_TIME_COLUMNS: [&str; 4] = ["k_abs", "sigma", "tau", "fill_erf"];

/// Time-domain fill probability in absolute price units.
pub fn fillprob_time_table(k_abs: f64, sigma: f64, tau: f64) -> Result<Table, String> {
    let p = asymptotics::fill_prob_time(k_abs, sigma, tau).map_err(|e| e.to_string())?;
    Ok(Table {
        meta: Meta {
            n: None,
            k: None,
            engine: EngineTag::LogSpace,
        },
        columns: FILL_TIME_COLUMNS.to_vec(),
        rows: vec![vec![
            Cell::Float(k_abs),
            Cell::Float(sigma),
            Cell::Float(tau),
            Cell::Float(p),
        ]],
    })
}

const SIMULATE_COLUMNS: [&str; 9] = [
    "n",
    "k",
    "paths",
    "seed",
    "mean_gain_hat",
    "se_mean",
    "variance_hat",
    "fill_prob_hat",
    "se_fill",
];

/// One-row Monte Carlo report.
pub fn simulate_table(scenario: Scenario, paths: u64, seed: u64) -> Result<Table, String> {
    let report = sim::simulate(scenario, paths, seed).map_err(|e| e.to_string())?;
    Ok(Table {
        meta: Meta {
            n: Some(scenario.n()),
            k: Some(scenario.k()),
            engine: report.engine,
        },
        columns: SIMULATE_COLUMNS.to_vec(),
        rows: vec![vec![
            Cell::UInt(scenario.n() as u64),
            Cell::UInt(scenario.k() as u64),
            Cell::UInt(report.paths),
            Cell::UInt(report.seed),
            Cell::Float(report.mean_gain_hat),
            Cell::Float(report.se_mean),
            Cell::Float(report.variance_hat),
            Cell::Float(report.fill_prob_hat),
            Cell::Float(report.se_fill),
        ]],
    })
}

/// First disagreement between the closed forms and the 2^n enumerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u32,
    pub k: u32,
    pub field: &'static str,
    pub expected: String,
    pub actual: String,
}

/// Compares the exact engine against the enumeration oracle field by
/// field for every scenario with `n <= n_max`, including the distribution
/// mass and moment identities. Returns the first mismatch, if any.
pub fn verify_scenarios(n_max: u32, mut progress: impl FnMut(u32)) -> Option<Mismatch> {
    for n in 1..=n_max {
        for k in 0..=n {
            let s = Scenario::new(n, k).expect("k <= n by construction");
            let oracle = sim::enumerate(s).expect("n_max within enumeration budget");
            let closed = analytics::execution_stats::<Exact>(s);
            let fields: [(&'static str, &tickwalk::ExactNum, &tickwalk::ExactNum); 5] = [
                ("mean_gain", &oracle.mean_gain, &closed.mean_gain),
                (
                    "cost_no_touch",
                    &oracle.cost_no_touch,
                    &closed.cost_no_touch,
                ),
                ("cost_touch", &oracle.cost_touch, &closed.cost_touch),
                ("variance", &oracle.variance, &closed.variance),
                (
                    "fill_probability",
                    &oracle.fill_probability,
                    &closed.fill_probability,
                ),
            ];
            for (field, expected, actual) in fields {
                if expected != actual {
                    return Some(Mismatch {
                        n,
                        k,
                        field,
                        expected: expected.to_string(),
                        actual: actual.to_string(),
                    });
                }
            }
            if k >= 1 {
                let dist = execution_distribution::<Exact>(s);
                let total = dist.total_mass();
                if !num_traits::One::is_one(&total) {
                    return Some(Mismatch {
                        n,
                        k,
                        field: "distribution_total_mass",
                        expected: "1".to_string(),
                        actual: total.to_string(),
                    });
                }
                let second = dist.second_moment();
                if second != closed.variance {
                    return Some(Mismatch {
                        n,
                        k,
                        field: "distribution_second_moment",
                        expected: closed.variance.to_string(),
                        actual: second.to_string(),
                    });
                }
            }
        }
        progress(n);
    }
    None
}
