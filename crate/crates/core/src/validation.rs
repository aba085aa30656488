//! Independent checks on the recovery method: an exhaustive nearest-fraction
//! oracle, the family of inputs that defeats the continued-fraction method
//! inside the uniqueness radius, and step-by-step residual traces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{threshold_improved, threshold_uniqueness, BoundedTarget};
use crate::recovery::{recover, RecoveryResult};

/// Largest bound [`farey_oracle`] scans by default.
pub const DEFAULT_ORACLE_LIMIT: u64 = 100_000;

/// Exhaustive search for the unique rational with denominator at most
/// `bound` lying within `1/(2N(N-1))` of `approx`.
pub fn farey_oracle(approx: &BigRational, bound: BoundedTarget) -> Result<Option<BigRational>> {
    farey_oracle_with_limit(approx, bound, DEFAULT_ORACLE_LIMIT)
}

pub fn farey_oracle_with_limit(
    approx: &BigRational,
    bound: BoundedTarget,
    limit: u64,
) -> Result<Option<BigRational>> {
    if bound.get() > limit {
        return Err(Error::Capacity {
            bound: bound.get(),
            limit,
        });
    }
    let (num, den) = (approx.numer(), approx.denom());
    let two_den = den * 2u8;

    // For each q the nearest numerator is floor(approx*q + 1/2). Distances
    // |num*q - p*den| / (den*q) are compared by cross-multiplication.
    let mut best: Option<(BigInt, BigInt, BigInt)> = None; // (p, q, |num*q - p*den|)
    for q in 1..=bound.get() {
        let q = BigInt::from(q);
        let p = (num * &q * 2u8 + den).div_floor(&two_den);
        let gap = (num * &q - &p * den).abs();
        let closer = match &best {
            None => true,
            Some((_, bq, bgap)) => &gap * bq < bgap * &q,
        };
        if closer {
            best = Some((p, q, gap));
        }
    }

    let (p, q, gap) = best.expect("bound >= 2 scans at least one denominator");
    let radius = threshold_uniqueness::<BigInt>(bound);
    // gap / (den*q) < 1/radius_den
    if gap * radius.denom() < den * &q {
        Ok(Some(Ratio::new(p, q)))
    } else {
        Ok(None)
    }
}

/// Target `(n-1)/n` with an approximation whose error sits between the
/// recovery and uniqueness radii for `N = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleInstance {
    pub n: u64,
    pub target: BigRational,
    /// `(2n + 2n^3 - 4n^2 - 1) / ((2n^2 - 2n + 1) n)`, expanding to
    /// `[0; 1, n-2, 2, n, n-1]`.
    pub approx: BigRational,
    /// `|approx - target| = 1/(2n(n-1) + 1)`
    pub error: BigRational,
}

impl CounterexampleInstance {
    pub fn bound(&self) -> BoundedTarget {
        BoundedTarget::new(self.n).expect("n >= 3")
    }
}

/// Builds the counterexample for `n >= 3`. At `n = 2` the expansion would
/// need a zero partial quotient, so it is rejected.
pub fn make_counterexample(n: u64) -> Result<CounterexampleInstance> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "counterexample family needs n >= 3, got {n}"
        )));
    }
    let m = BigInt::from(n);
    let m2 = &m * &m;
    let m3 = &m2 * &m;
    let approx_num = &m * 2u8 + &m3 * 2u8 - &m2 * 4u8 - 1u8;
    let approx_den = (&m2 * 2u8 - &m * 2u8 + 1u8) * &m;
    let approx = Ratio::new(approx_num, approx_den);
    let target = Ratio::new(&m - 1u8, m);
    let error = (&approx - &target).abs();
    Ok(CounterexampleInstance {
        n,
        target,
        approx,
        error,
    })
}

/// Outcome of running both the continued-fraction method and the oracle on a
/// counterexample instance.
#[derive(Debug, Clone)]
pub struct GapReport {
    pub instance: CounterexampleInstance,
    pub cf_result: RecoveryResult<BigInt>,
    pub oracle_result: Option<BigRational>,
    pub within_uniqueness: bool,
    pub outside_recovery_radius: bool,
}

impl GapReport {
    pub fn cf_misses(&self) -> bool {
        self.cf_result.recovered != self.instance.target
    }

    pub fn oracle_hits(&self) -> bool {
        self.oracle_result.as_ref() == Some(&self.instance.target)
    }

    /// Uniqueness holds, the oracle finds the target, and the
    /// continued-fraction method does not.
    pub fn holds(&self) -> bool {
        self.within_uniqueness
            && self.outside_recovery_radius
            && self.cf_misses()
            && self.oracle_hits()
    }
}

pub fn demonstrate_gap(n: u64) -> Result<GapReport> {
    demonstrate_gap_with_limit(n, DEFAULT_ORACLE_LIMIT)
}

pub fn demonstrate_gap_with_limit(n: u64, oracle_limit: u64) -> Result<GapReport> {
    let instance = make_counterexample(n)?;
    let bound = instance.bound();
    let cf_result = recover(&instance.approx, bound);
    let oracle_result = farey_oracle_with_limit(&instance.approx, bound, oracle_limit)?;
    Ok(GapReport {
        within_uniqueness: instance.error < threshold_uniqueness(bound),
        outside_recovery_radius: instance.error > threshold_improved(bound),
        instance,
        cf_result,
        oracle_result,
    })
}

/// One aligned step of the target and approximation chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualStep {
    pub index: usize,
    /// `n_{i+1}`
    pub n_next: BigInt,
    /// `n_{i+2}`
    pub n_after: BigInt,
    /// `r_i`, fractional remainder of the approximation chain
    pub r: BigRational,
    /// `d_i = r_i - n_{i+2}/n_{i+1}`
    pub d: BigRational,
}

/// Exact check of `|d_{k+1}| < n_{k+1}(n_{k+1}-1) / (n_{k+2}(n_{k+2}-1)) * |d_k|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub index: usize,
    /// `|d_k| < 1/(n_{k+1}(n_{k+1}-1))`
    pub hypothesis: bool,
    pub bound: BigRational,
    /// A zero residual propagates as zero and counts as holding.
    pub holds: bool,
}

/// Last-quotient check: if `|d_{L-1}| < 1/(n_L(n_L+1))` then `b_L` is `a_L` or
/// `a_L - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinalStepCheck {
    pub hypothesis: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualTrace {
    /// Index `L` of the target's last partial quotient.
    pub target_last_index: usize,
    pub steps: Vec<ResidualStep>,
    pub contractions: Vec<Contraction>,
    pub final_step: Option<FinalStepCheck>,
    /// First quotient index where the approximation's expansion disagrees
    /// with the target's (or has ended).
    pub diverged_at: Option<usize>,
}

impl ResidualTrace {
    /// Every contraction whose hypothesis holds satisfies the inequality.
    pub fn contractions_hold(&self) -> bool {
        self.contractions.iter().all(|c| !c.hypothesis || c.holds)
    }
}

/// Walks the target's Euclid chain `n_1 = den, n_2 = num, ...` alongside the
/// approximation's remainders `r_i`, recording `d_i` while the quotients
/// agree.
pub fn trace_residuals(target: &BigRational, approx: &BigRational) -> Result<ResidualTrace> {
    if !target.is_positive() || *target >= BigRational::one() || target.denom().is_one() {
        return Err(Error::Precondition(
            "residual traces need a target strictly between 0 and 1".into(),
        ));
    }

    // chain[i - 1] = n_i, ending ..., n_{L+1} = 1, n_{L+2} = 0
    let mut chain = vec![target.denom().clone(), target.numer().clone()];
    while !chain.last().unwrap().is_zero() {
        let len = chain.len();
        let next = &chain[len - 2] % &chain[len - 1];
        chain.push(next);
    }
    let last_index = chain.len() - 2;
    let n = |i: usize| &chain[i - 1];
    let quotient = |i: usize| n(i) / n(i + 1);

    let mut trace = ResidualTrace {
        target_last_index: last_index,
        steps: Vec::new(),
        contractions: Vec::new(),
        final_step: None,
        diverged_at: None,
    };

    if !approx.floor().is_zero() {
        trace.diverged_at = Some(0);
        return Ok(trace);
    }

    let mut r = approx.fract();
    let residual = |i: usize, r: &BigRational| r - Ratio::new(n(i + 2).clone(), n(i + 1).clone());
    trace.steps.push(ResidualStep {
        index: 0,
        n_next: n(1).clone(),
        n_after: n(2).clone(),
        d: residual(0, &r),
        r: r.clone(),
    });

    for i in 0..last_index {
        if r.is_zero() {
            trace.diverged_at = Some(i + 1);
            break;
        }
        let inv = r.recip();
        let b = inv.floor().to_integer();
        let a = quotient(i + 1);

        if i + 1 == last_index {
            let d = &trace.steps[i].d;
            let n_last = n(last_index);
            let limit = Ratio::new(BigInt::one(), n_last * (n_last + 1u8));
            trace.final_step = Some(FinalStepCheck {
                hypothesis: d.abs() < limit,
                holds: b == a || b == &a - 1u8,
            });
        }
        if b != a {
            trace.diverged_at = Some(i + 1);
            break;
        }

        r = inv.fract();
        let step = ResidualStep {
            index: i + 1,
            n_next: n(i + 2).clone(),
            n_after: n(i + 3).clone(),
            d: residual(i + 1, &r),
            r: r.clone(),
        };
        let prev = &trace.steps[i];
        if step.n_next > BigInt::one() {
            let (nk1, nk2) = (&prev.n_next, &step.n_next);
            let d_abs = prev.d.abs();
            let hypothesis = d_abs < Ratio::new(BigInt::one(), nk1 * (nk1 - 1u8));
            let bound = Ratio::new(nk1 * (nk1 - 1u8), nk2 * (nk2 - 1u8)) * &d_abs;
            let next_abs = step.d.abs();
            let holds = next_abs < bound || (d_abs.is_zero() && next_abs.is_zero());
            trace.contractions.push(Contraction {
                index: i,
                hypothesis,
                bound,
                holds,
            });
        }
        trace.steps.push(step);
    }

    Ok(trace)
}
