//! Recovery of a denominator-bounded rational from an approximation.
//!
//! The approximation's continued fraction is expanded lazily; the last
//! convergent whose denominator stays within the bound is returned. When the
//! approximation is within `1/(4N(N-1))` of a rational with denominator at
//! most `N`, that convergent is exactly the hidden rational.

use num_rational::Ratio;
use num_traits::Signed;

use crate::cf::{cf_expand, ConvergentStep, Convergents, Quotients};
use crate::error::{Error, Result};
use crate::exact::{render, threshold_improved, threshold_uniqueness, BoundedTarget, Int};

/// Why the convergent walk stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    /// A convergent denominator went past the bound.
    DenominatorExceeded,
    /// The expansion ran out first; the input itself fits the bound.
    ExactTermination,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryResult<I: Int> {
    pub recovered: Ratio<I>,
    /// Convergents of `|approx|` with denominator within the bound. The last
    /// entry is the recovered magnitude.
    pub trail: Vec<ConvergentStep<I>>,
    /// The first convergent past the bound, present iff `termination` is
    /// [`Termination::DenominatorExceeded`].
    pub exceeded: Option<ConvergentStep<I>>,
    pub termination: Termination,
    /// `residual < 1/(2N(N-1))`: no other rational with denominator `<= N` is
    /// as close to the input.
    pub certified: bool,
    pub residual: Ratio<I>,
}

/// Recovers the rational with denominator at most `bound` hidden behind
/// `approx`.
///
/// Negative inputs are handled by recovering `|approx|` and restoring the
/// sign. The trail therefore always describes the magnitude.
pub fn recover<I: Int>(approx: &Ratio<I>, bound: BoundedTarget) -> RecoveryResult<I> {
    let limit: I = bound.as_int();
    let magnitude = approx.abs();

    let mut trail = Vec::new();
    let mut exceeded = None;
    for step in Convergents::new(Quotients::new(&magnitude)) {
        if step.k > limit {
            exceeded = Some(step);
            break;
        }
        trail.push(step);
    }

    // k_0 = 1, so the trail is never empty
    let mut recovered = trail.last().expect("k0 = 1 fits every bound").value();
    if approx.is_negative() {
        recovered = -recovered;
    }
    let residual = (approx - &recovered).abs();
    let certified = residual < threshold_uniqueness(bound);
    let termination = if exceeded.is_some() {
        Termination::DenominatorExceeded
    } else {
        Termination::ExactTermination
    };

    RecoveryResult {
        recovered,
        trail,
        exceeded,
        termination,
        certified,
        residual,
    }
}

/// Whether `candidate` is provably the only rational with denominator at most
/// `bound` within `1/(2N(N-1))` of `approx`.
pub fn certify<I: Int>(
    approx: &Ratio<I>,
    candidate: &Ratio<I>,
    bound: BoundedTarget,
) -> Result<bool> {
    if *candidate.denom() > bound.as_int() {
        return Err(Error::Precondition(format!(
            "candidate {} has denominator above the bound {bound}",
            render(candidate)
        )));
    }
    Ok((approx - candidate).abs() < threshold_uniqueness(bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecoveryWarning {
    /// The claimed error exceeds `1/(4N(N-1))`. The result is still unique if
    /// certified, but the continued-fraction method may have missed it.
    OutsideRecoveryRadius,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedRecovery<I: Int> {
    pub result: RecoveryResult<I>,
    pub warning: Option<RecoveryWarning>,
}

/// [`recover`] guarded by the caller's known error bound.
///
/// `claimed_error` is a strict bound: the caller asserts
/// `|approx - hidden| < claimed_error`. A claim larger than `1/(2N(N-1))`
/// voids uniqueness and is rejected; a claim larger than `1/(4N(N-1))` voids
/// the recovery guarantee and produces a warning.
pub fn recover_checked<I: Int>(
    approx: &Ratio<I>,
    bound: BoundedTarget,
    claimed_error: &Ratio<I>,
) -> Result<CheckedRecovery<I>> {
    if claimed_error.is_negative() {
        return Err(Error::Precondition(format!(
            "claimed error {} is negative",
            render(claimed_error)
        )));
    }
    let radius = threshold_uniqueness(bound);
    if *claimed_error > radius {
        return Err(Error::GuaranteeViolation {
            claimed: render(claimed_error),
            radius: render(&radius),
        });
    }
    let warning = (*claimed_error > threshold_improved(bound))
        .then_some(RecoveryWarning::OutsideRecoveryRadius);
    Ok(CheckedRecovery {
        result: recover(approx, bound),
        warning,
    })
}

/// How the expansion of an approximation lines up with the expansion of the
/// rational it approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CfAgreement {
    /// `b_i = a_i` for every quotient `a_0..a_L` of the target.
    Identical,
    /// `b_i = a_i` for `i < L`, `b_L = a_L - 1` and `b_{L+1} = 1`.
    TrailingOneSplit,
}

/// Compares the quotients of `approx` with those of `target`. Returns `None`
/// when neither agreement pattern holds.
pub fn cf_agreement<I: Int>(target: &Ratio<I>, approx: &Ratio<I>) -> Option<CfAgreement> {
    let a = cf_expand(target).into_quotients();
    let b = cf_expand(approx).into_quotients();
    let last = a.len() - 1;
    if b.len() > last && b[..=last] == a[..] {
        return Some(CfAgreement::Identical);
    }
    if b.len() > last + 1
        && b[..last] == a[..last]
        && b[last] == a[last].clone() - I::one()
        && b[last + 1].is_one()
    {
        return Some(CfAgreement::TrailingOneSplit);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_decimal;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    fn bound(n: u64) -> BoundedTarget {
        BoundedTarget::new(n).unwrap()
    }

    #[test]
    fn example_one() {
        let r = recover(&parse_decimal(".8106421859").unwrap(), bound(170));
        assert_eq!(r.recovered, big(137, 169));
        assert!(r.certified);
        assert_eq!(r.termination, Termination::DenominatorExceeded);
        assert_eq!(r.trail.len(), 8);
        assert_eq!(r.exceeded.unwrap().value(), big(518, 639));
    }

    #[test]
    fn example_two() {
        let r = recover(&parse_decimal(".178870799516605").unwrap(), bound(1790));
        assert_eq!(r.recovered, big(320, 1789));
        assert_eq!(r.exceeded.unwrap().value(), big(1131, 6323));
    }

    #[test]
    fn example_three() {
        let r = recover(&parse_decimal("1.881536615").unwrap(), bound(18));
        assert_eq!(r.recovered, big(32, 17));
        assert_eq!(r.exceeded.unwrap().value(), big(111, 59));
    }

    #[test]
    fn counterexample_is_not_recovered() {
        let r = recover(&big(23, 39), bound(3));
        assert_eq!(r.recovered, big(1, 2));
        assert!(!r.certified);
        assert_eq!(r.residual, big(7, 78));
    }

    #[test]
    fn exact_input_terminates_without_exceeding() {
        let r = recover(&big(7, 2), bound(10));
        assert_eq!(r.recovered, big(7, 2));
        assert_eq!(r.termination, Termination::ExactTermination);
        assert!(r.exceeded.is_none());
        assert!(r.residual.is_zero() && r.certified);
    }

    #[test]
    fn sign_is_restored() {
        let r = recover(&parse_decimal("-.3749999995480").unwrap(), bound(65));
        assert_eq!(r.recovered, big(-3, 8));
        assert_eq!(r.trail.last().unwrap().value(), big(3, 8));
        let zero = recover(&big(0, 1), bound(2));
        assert_eq!(zero.recovered, big(0, 1));
        assert_eq!(zero.termination, Termination::ExactTermination);
    }

    #[test]
    fn integer_target_below_from_the_left() {
        // 1 - 1/10 approaches the integer 1 through the [0; 1, ...] split
        let r = recover(&big(9, 10), bound(2));
        assert_eq!(r.recovered, big(1, 1));
        assert_eq!(
            cf_agreement(&big(1, 1), &big(9, 10)),
            Some(CfAgreement::TrailingOneSplit)
        );
    }

    #[test]
    fn fixed_width_recovery_matches() {
        let r = recover(&Ratio::new(8106421859i64, 10000000000), bound(170));
        assert_eq!(r.recovered, Ratio::new(137, 169));
        let r = recover(&Ratio::new(23i128, 39), bound(3));
        assert_eq!(r.recovered, Ratio::new(1, 2));
    }

    #[test]
    fn certify_examples() {
        let approx = parse_decimal(".8106421859").unwrap();
        assert!(certify(&approx, &big(137, 169), bound(170)).unwrap());
        assert!(!certify(&big(23, 39), &big(1, 2), bound(3)).unwrap());
        assert!(certify(&big(3, 7), &big(3, 7), bound(7)).unwrap());
        assert!(matches!(
            certify(&big(3, 7), &big(3, 8), bound(7)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn checked_recovery() {
        let approx = parse_decimal(".8106421859").unwrap();
        let ok = recover_checked(&approx, bound(170), &big(1, 114920)).unwrap();
        assert_eq!(ok.result.recovered, big(137, 169));
        assert_eq!(ok.warning, None);

        // inside the uniqueness radius 1/12 but outside the recovery radius 1/24
        let warned = recover_checked(&big(23, 39), bound(3), &big(1, 13)).unwrap();
        assert_eq!(warned.warning, Some(RecoveryWarning::OutsideRecoveryRadius));

        assert!(matches!(
            recover_checked(&big(23, 39), bound(3), &big(1, 10)),
            Err(Error::GuaranteeViolation { .. })
        ));
        assert!(recover_checked(&big(5, 3), bound(9), &big(0, 1))
            .unwrap()
            .warning
            .is_none());
        assert!(matches!(
            recover_checked(&big(5, 3), bound(9), &big(-1, 10)),
            Err(Error::Precondition(_))
        ));
    }

    /// Reduced m/n with n <= N, plus a perturbation strictly inside the
    /// recovery radius.
    fn instance() -> impl Strategy<Value = (BigRational, BigRational, u64)> {
        (2u64..=500)
            .prop_flat_map(|n_max| (Just(n_max), 1..=n_max))
            .prop_flat_map(|(n_max, den)| {
                (
                    Just(n_max),
                    Just(den),
                    -3 * den as i64..=3 * den as i64,
                    -999i64..=999,
                )
            })
            .prop_map(|(n_max, den, num, t)| {
                let target = big(num, den as i64);
                let eps = threshold_improved::<BigInt>(bound(n_max)) * big(t, 1000);
                (target, eps, n_max)
            })
    }

    proptest! {
        #[test]
        fn recovers_within_radius((target, eps, n) in instance()) {
            let approx = &target + &eps;
            let r = recover(&approx, bound(n));
            prop_assert_eq!(&r.recovered, &target);
            prop_assert!(r.certified);
            prop_assert!(r.recovered.denom() <= &BigInt::from(n));
            if let Some(next) = &r.exceeded {
                prop_assert!(next.k > BigInt::from(n));
            }
        }

        #[test]
        fn later_convergents_exceed_bound((target, eps, n) in instance()) {
            let approx = (&target + &eps).abs();
            let r = recover(&approx, bound(n));
            let all = cf_expand(&approx).convergents();
            for step in &all[r.trail.len()..] {
                prop_assert!(step.k > BigInt::from(n));
            }
        }

        #[test]
        fn quotients_agree_structurally((target, eps, _n) in instance()) {
            prop_assume!(target.is_positive());
            let approx = &target + &eps;
            prop_assert!(cf_agreement(&target, &approx).is_some());
        }

        #[test]
        fn recovery_is_deterministic(num in any::<i64>(), den in 1i64.., n in 2u64..100_000) {
            let x = big(num, den);
            prop_assert_eq!(recover(&x, bound(n)), recover(&x, bound(n)));
        }

        #[test]
        fn result_denominator_within_bound(num in any::<i64>(), den in 1i64.., n in 2u64..100_000) {
            let x = big(num, den);
            let r = recover(&x, bound(n));
            prop_assert!(r.recovered.denom() <= &BigInt::from(n));
            prop_assert_eq!(r.certified, r.residual < threshold_uniqueness(bound(n)));
            prop_assert_eq!(r.exceeded.is_some(), r.termination == Termination::DenominatorExceeded);
            prop_assert!(r.trail.first().unwrap().k.is_one());
        }
    }
}
