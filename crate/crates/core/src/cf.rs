//! Finite continued fractions over exact rationals and the convergent
//! recurrence `h_i = a_i h_{i-1} + h_{i-2}`, `k_i = a_i k_{i-1} + k_{i-2}`.

use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::Int;

/// A finite simple continued fraction `[a0; a1, a2, ...]`.
///
/// `a0` may be any integer, every later quotient is at least 1. Values built
/// by [`ContinuedFraction::expand`] are canonical (the final quotient exceeds
/// 1 unless there is only one). The trailing-1 form `[..., a_n - 1, 1]` is
/// accepted by [`ContinuedFraction::new`] because recovery can produce it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction<I> {
    quotients: Vec<I>,
}

impl<I: Int> ContinuedFraction<I> {
    pub fn new(quotients: Vec<I>) -> Result<Self> {
        validate(&quotients)?;
        Ok(ContinuedFraction { quotients })
    }

    /// Canonical expansion of `x` by Euclid's algorithm, with `a0 = floor(x)`.
    pub fn expand(x: &Ratio<I>) -> Self {
        ContinuedFraction {
            quotients: Quotients::new(x).collect(),
        }
    }

    pub fn quotients(&self) -> &[I] {
        &self.quotients
    }

    pub fn into_quotients(self) -> Vec<I> {
        self.quotients
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_canonical(&self) -> bool {
        self.quotients.len() == 1 || !self.quotients.last().unwrap().is_one()
    }

    /// Folds a trailing 1 into the previous quotient: `[..., a, 1] -> [..., a + 1]`.
    pub fn canonical(mut self) -> Self {
        if !self.is_canonical() {
            self.quotients.pop();
            let last = self.quotients.last_mut().unwrap();
            *last = last.clone() + I::one();
        }
        self
    }

    /// Exact value, folded from the innermost quotient outwards.
    pub fn value(&self) -> Ratio<I> {
        let mut iter = self.quotients.iter().rev();
        let mut acc = Ratio::from_integer(iter.next().unwrap().clone());
        for a in iter {
            acc = Ratio::from_integer(a.clone()) + acc.recip();
        }
        acc
    }

    pub fn convergents(&self) -> Vec<ConvergentStep<I>> {
        Convergents::new(self.quotients.iter().cloned()).collect()
    }
}

impl<I: fmt::Display> fmt::Display for ContinuedFraction<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.quotients[0])?;
        for (i, a) in self.quotients[1..].iter().enumerate() {
            f.write_str(if i == 0 { "; " } else { ", " })?;
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

fn validate<I: Int>(quotients: &[I]) -> Result<()> {
    if quotients.is_empty() {
        return Err(Error::Precondition(
            "a continued fraction needs at least one quotient".into(),
        ));
    }
    match quotients.iter().skip(1).position(|a| !a.is_positive()) {
        Some(i) => Err(Error::InvalidRepresentation { index: i + 1 }),
        None => Ok(()),
    }
}

/// Canonical expansion of `x`.
pub fn cf_expand<I: Int>(x: &Ratio<I>) -> ContinuedFraction<I> {
    ContinuedFraction::expand(x)
}

/// Value of a quotient sequence; a trailing 1 is allowed.
pub fn cf_eval<I: Int>(quotients: &[I]) -> Result<Ratio<I>> {
    validate(quotients)?;
    Ok(ContinuedFraction {
        quotients: quotients.to_vec(),
    }
    .value())
}

/// Convergent trail of a quotient sequence; a trailing 1 is allowed.
pub fn convergents<I: Int>(quotients: &[I]) -> Result<Vec<ConvergentStep<I>>> {
    validate(quotients)?;
    Ok(Convergents::new(quotients.iter().cloned()).collect())
}

/// Lazy Euclid chain producing the canonical partial quotients of a rational.
#[derive(Debug, Clone)]
pub struct Quotients<I> {
    num: I,
    den: I,
    done: bool,
}

impl<I: Int> Quotients<I> {
    pub fn new(x: &Ratio<I>) -> Self {
        Quotients {
            num: x.numer().clone(),
            den: x.denom().clone(),
            done: false,
        }
    }
}

impl<I: Int> Iterator for Quotients<I> {
    type Item = I;

    fn next(&mut self) -> Option<I> {
        if self.done {
            return None;
        }
        let (a, r) = self.num.div_mod_floor(&self.den);
        if r.is_zero() {
            self.done = true;
        } else {
            self.num = std::mem::replace(&mut self.den, r);
        }
        Some(a)
    }
}

/// One row of the convergent recurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvergentStep<I> {
    pub index: usize,
    pub quotient: I,
    pub h: I,
    pub k: I,
}

impl<I: Int> ConvergentStep<I> {
    pub fn value(&self) -> Ratio<I> {
        Ratio::new(self.h.clone(), self.k.clone())
    }
}

/// Runs the recurrence over any quotient stream, seeded with
/// `h_{-1} = 1, h_{-2} = 0, k_{-1} = 0, k_{-2} = 1`.
#[derive(Debug, Clone)]
pub struct Convergents<I, Q> {
    quotients: Q,
    index: usize,
    h: (I, I),
    k: (I, I),
}

impl<I: Int, Q: Iterator<Item = I>> Convergents<I, Q> {
    pub fn new(quotients: Q) -> Self {
        Convergents {
            quotients,
            index: 0,
            // (previous, one before previous)
            h: (I::one(), I::zero()),
            k: (I::zero(), I::one()),
        }
    }
}

impl<I: Int, Q: Iterator<Item = I>> Iterator for Convergents<I, Q> {
    type Item = ConvergentStep<I>;

    fn next(&mut self) -> Option<ConvergentStep<I>> {
        let a = self.quotients.next()?;
        let h = a.clone() * self.h.0.clone() + self.h.1.clone();
        let k = a.clone() * self.k.0.clone() + self.k.1.clone();
        self.h = (h.clone(), std::mem::replace(&mut self.h.0, h.clone()));
        self.k = (k.clone(), std::mem::replace(&mut self.k.0, k.clone()));
        let step = ConvergentStep {
            index: self.index,
            quotient: a,
            h,
            k,
        };
        self.index += 1;
        Some(step)
    }
}

/// Error of one convergent against the classical two-sided estimate
/// `1/(k_n(k_{n+1} + k_n)) < |x - h_n/k_n| < 1/(k_n k_{n+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorBounds<I: Int> {
    pub index: usize,
    pub lower: Ratio<I>,
    pub upper: Ratio<I>,
    pub actual: Ratio<I>,
}

impl<I: Int> ErrorBounds<I> {
    pub fn lower_holds(&self) -> bool {
        self.lower < self.actual
    }

    pub fn upper_holds(&self) -> bool {
        self.actual < self.upper
    }
}

/// Bounds for every index `n` that has a successor step.
///
/// For a finite expansion ending at index `L`, the entry for `n = L - 1` meets
/// the upper bound with equality: `x` is itself the next convergent, so the
/// error is exactly `1/(k_{L-1} k_L)`. All earlier entries are strict on both
/// sides.
pub fn convergent_error_bounds<I: Int>(
    x: &Ratio<I>,
    steps: &[ConvergentStep<I>],
) -> Vec<ErrorBounds<I>> {
    steps
        .windows(2)
        .map(|pair| {
            let (cur, next) = (&pair[0], &pair[1]);
            let kk = cur.k.clone() * next.k.clone();
            let lower = Ratio::new(I::one(), cur.k.clone() * (next.k.clone() + cur.k.clone()));
            ErrorBounds {
                index: cur.index,
                lower,
                upper: Ratio::new(I::one(), kk),
                actual: (x - cur.value()).abs(),
            }
        })
        .collect()
}
