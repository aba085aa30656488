//! Recover the exact rational hidden behind a numerical approximation.
//!
//! Given an approximation `w` and a bound `N` on the denominator of the
//! hidden value, [`recover`] walks the continued-fraction convergents of `w`
//! and returns the last one whose denominator does not exceed `N`. If `w` is
//! within `1/(4N(N-1))` of the hidden value, the result is exact.
//!
//! The continued-fraction engine and recovery are generic over the integer
//! type ([`Int`]); the aliases below fix it to `BigInt`, which is what the
//! rest of the crate uses.

pub mod bench;
pub mod cf;
pub mod error;
pub mod exact;
pub mod poly;
pub mod recovery;
pub mod validation;

pub use num_bigint::BigInt;

pub use num_rational::{BigRational, Rational64};

pub use cf::{cf_eval, cf_expand, convergent_error_bounds, convergents, ErrorBounds};
pub use error::{Error, Result};
pub use exact::{
    parse_decimal, render, threshold_improved, threshold_legacy, threshold_uniqueness,
    BoundedTarget, Int,
};
pub use recovery::{
    certify, cf_agreement, recover, recover_checked, CfAgreement, CheckedRecovery, RecoveryWarning,
    Termination,
};

pub type ContinuedFraction = cf::ContinuedFraction<BigInt>;
pub type ConvergentStep = cf::ConvergentStep<BigInt>;
pub type RecoveryResult = recovery::RecoveryResult<BigInt>;

pub type ContinuedFraction64 = cf::ContinuedFraction<i64>;
pub type ConvergentStep64 = cf::ConvergentStep<i64>;
pub type RecoveryResult64 = recovery::RecoveryResult<i64>;
