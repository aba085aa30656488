//! Seeded comparison of recovery success across the three error bands.
//!
//! Each trial draws a reduced target `m/n` in `(0, 2)` with `n <= N` and a
//! perturbation whose magnitude lies strictly inside one band. Sampling uses
//! ChaCha8 seeded from the caller's seed, so a given `(bound, trials, seed)`
//! always yields the same report.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{threshold_improved, threshold_legacy, threshold_uniqueness, BoundedTarget};
use crate::recovery::recover;
use crate::validation::{farey_oracle_with_limit, make_counterexample, DEFAULT_ORACLE_LIMIT};

/// Resolution of the uniform draw inside a band.
const STEPS: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Band {
    /// `0 < |eps| < 1/((2N+2)N(N-1))`
    BelowLegacy,
    /// `1/((2N+2)N(N-1)) < |eps| < 1/(4N(N-1))`
    LegacyToImproved,
    /// `1/(4N(N-1)) < |eps| < 1/(2N(N-1))`
    ImprovedToUniqueness,
}

impl Band {
    pub const ALL: [Band; 3] = [
        Band::BelowLegacy,
        Band::LegacyToImproved,
        Band::ImprovedToUniqueness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Band::BelowLegacy => "below_legacy",
            Band::LegacyToImproved => "legacy_to_improved",
            Band::ImprovedToUniqueness => "improved_to_uniqueness",
        }
    }

    fn limits(self, bound: BoundedTarget) -> (BigRational, BigRational) {
        match self {
            Band::BelowLegacy => (Ratio::from_integer(0.into()), threshold_legacy(bound)),
            Band::LegacyToImproved => (threshold_legacy(bound), threshold_improved(bound)),
            Band::ImprovedToUniqueness => (threshold_improved(bound), threshold_uniqueness(bound)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub bound: BoundedTarget,
    pub trials: u64,
    pub seed: u64,
    /// Replace the first trial of the top band with the `(n-1)/n`
    /// counterexample for `n = N` (needs `N >= 3`).
    pub inject_counterexample: bool,
    pub oracle_limit: u64,
}

impl BenchConfig {
    pub fn new(bound: BoundedTarget, trials: u64, seed: u64) -> Self {
        BenchConfig {
            bound,
            trials,
            seed,
            inject_counterexample: false,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandReport {
    pub band: Band,
    pub cf_successes: u64,
    pub oracle_successes: u64,
    pub trials: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchReport {
    pub bands: Vec<BandReport>,
}

impl BenchReport {
    pub fn band(&self, band: Band) -> &BandReport {
        self.bands.iter().find(|b| b.band == band).unwrap()
    }

    /// `band,cf_success,oracle_success,trials` rows; rates have six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("band,cf_success,oracle_success,trials\n");
        for b in &self.bands {
            writeln!(
                out,
                "{},{},{},{}",
                b.band.name(),
                rate(b.cf_successes, b.trials),
                rate(b.oracle_successes, b.trials),
                b.trials
            )
            .unwrap();
        }
        out
    }
}

/// `num/den` rounded half-up to six decimals, in integer arithmetic.
fn rate(num: u64, den: u64) -> String {
    let scaled = (u128::from(num) * 2_000_000 + u128::from(den)) / (2 * u128::from(den));
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

pub fn bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.trials < 1 {
        return Err(Error::Domain("bench needs at least one trial".into()));
    }
    let bound = config.bound;
    let n_max = bound.get();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut bands = Vec::with_capacity(Band::ALL.len());
    for band in Band::ALL {
        let (lo, hi) = band.limits(bound);
        let width = &hi - &lo;
        let mut report = BandReport {
            band,
            cf_successes: 0,
            oracle_successes: 0,
            trials: config.trials,
        };
        for trial in 0..config.trials {
            let (target, approx) = if config.inject_counterexample
                && band == Band::ImprovedToUniqueness
                && trial == 0
                && n_max >= 3
            {
                let inst = make_counterexample(n_max)?;
                (inst.target, inst.approx)
            } else {
                let den = rng.random_range(1..=n_max);
                let num = rng.random_range(1..2 * den);
                let target = Ratio::new(BigInt::from(num), BigInt::from(den));
                let t = Ratio::new(
                    BigInt::from(rng.random_range(1..STEPS)),
                    BigInt::from(STEPS),
                );
                let mut eps = &lo + &width * t;
                if rng.random::<bool>() {
                    eps = -eps;
                }
                let approx = &target + eps;
                (target, approx)
            };

            if recover(&approx, bound).recovered == target {
                report.cf_successes += 1;
            }
            if farey_oracle_with_limit(&approx, bound, config.oracle_limit)?.as_ref()
                == Some(&target)
            {
                report.oracle_successes += 1;
            }
        }
        bands.push(report);
    }
    Ok(BenchReport { bands })
}
