//! Exact rational values, the denominator bound, decimal parsing and the
//! three error radii.
//!
//! All approximations enter the library as text and are converted without
//! rounding. Arithmetic is delegated to [`num_rational::Ratio`], which keeps
//! every value reduced with a positive denominator.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Integer types usable as the numerator/denominator of the exact rationals
/// the continued-fraction machinery runs on.
///
/// Implemented for `BigInt` as well as the fixed-width signed primitives.
/// Fixed-width types trade range for speed: they overflow (and panic in
/// debug builds) once convergent denominators leave their range.
pub trait Int:
    num_integer::Integer + Signed + Clone + FromPrimitive + fmt::Debug + fmt::Display
{
}

impl<T> Int for T where
    T: num_integer::Integer + Signed + Clone + FromPrimitive + fmt::Debug + fmt::Display
{
}

/// Largest decimal exponent accepted by [`parse_decimal`].
pub const MAX_EXPONENT: u32 = 10_000;

/// Upper bound `N` on the denominator of the rational being recovered.
///
/// Always at least 2, even when the hidden value is an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundedTarget(u64);

impl BoundedTarget {
    pub fn new(bound: u64) -> Result<Self> {
        if bound < 2 {
            return Err(Error::Domain(format!(
                "denominator bound must be at least 2, got {bound}"
            )));
        }
        Ok(BoundedTarget(bound))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// The bound converted into the integer type `I`.
    ///
    /// Panics if `I` cannot represent the bound.
    pub fn as_int<I: Int>(self) -> I {
        I::from_u64(self.0).expect("denominator bound does not fit the integer type")
    }
}

impl TryFrom<u64> for BoundedTarget {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        BoundedTarget::new(value)
    }
}

impl fmt::Display for BoundedTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `1/(4N(N-1))`: within this distance the continued-fraction method finds
/// the hidden rational.
pub fn threshold_improved<I: Int>(bound: BoundedTarget) -> Ratio<I> {
    let n: I = bound.as_int();
    let four = I::from_u8(4).unwrap();
    let den = four * n.clone() * (n - I::one());
    Ratio::new(I::one(), den)
}

/// `1/(2N(N-1))`: at most one rational with denominator `<= N` lies this
/// close to any point.
pub fn threshold_uniqueness<I: Int>(bound: BoundedTarget) -> Ratio<I> {
    let n: I = bound.as_int();
    let two = I::from_u8(2).unwrap();
    let den = two * n.clone() * (n - I::one());
    Ratio::new(I::one(), den)
}

/// `1/((2N+2)N(N-1))`: the radius required by the older, stricter variant of
/// the algorithm.
pub fn threshold_legacy<I: Int>(bound: BoundedTarget) -> Ratio<I> {
    let n: I = bound.as_int();
    let two = I::from_u8(2).unwrap();
    let den = (two * n.clone() + I::from_u8(2).unwrap()) * n.clone() * (n - I::one());
    Ratio::new(I::one(), den)
}

/// Renders a rational as `p/q`, or `p` when the denominator is 1.
pub fn render<I: Int>(value: &Ratio<I>) -> String {
    value.to_string()
}

/// Parses a decimal literal or an explicit fraction into an exact rational.
///
/// Accepted forms are `[+|-] digits [. digits] [(e|E) [+|-] digits]` (the
/// integer digits may be omitted when fraction digits are present, as in
/// `.8106421859`) and `[+|-] digits / digits`.
pub fn parse_decimal(text: &str) -> Result<Ratio<BigInt>> {
    let bytes = text.as_bytes();
    let mut pos = 0;

    let negative = match bytes.first() {
        Some(b'-') => {
            pos += 1;
            true
        }
        Some(b'+') => {
            pos += 1;
            false
        }
        _ => false,
    };

    let int_start = pos;
    pos = skip_digits(bytes, pos);
    let int_digits = &text[int_start..pos];

    if bytes.get(pos) == Some(&b'/') {
        if int_digits.is_empty() {
            return Err(parse_error(pos, "expected digits before '/'"));
        }
        let den_start = pos + 1;
        let den_end = skip_digits(bytes, den_start);
        if den_end == den_start {
            return Err(parse_error(den_start, "expected digits after '/'"));
        }
        if den_end != bytes.len() {
            return Err(parse_error(den_end, "unexpected character"));
        }
        let num = digits_to_int(int_digits);
        let den = digits_to_int(&text[den_start..den_end]);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = Ratio::new(num, den);
        return Ok(if negative { -value } else { value });
    }

    let mut frac_digits = "";
    if bytes.get(pos) == Some(&b'.') {
        let frac_start = pos + 1;
        pos = skip_digits(bytes, frac_start);
        if pos == frac_start {
            return Err(parse_error(frac_start, "expected digits after '.'"));
        }
        frac_digits = &text[frac_start..pos];
    }

    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(parse_error(pos, "expected digits"));
    }

    let mut exponent: i64 = 0;
    if matches!(bytes.get(pos), Some(b'e' | b'E')) {
        pos += 1;
        let exp_negative = match bytes.get(pos) {
            Some(b'-') => {
                pos += 1;
                true
            }
            Some(b'+') => {
                pos += 1;
                false
            }
            _ => false,
        };
        let exp_start = pos;
        pos = skip_digits(bytes, exp_start);
        if pos == exp_start {
            return Err(parse_error(exp_start, "expected exponent digits"));
        }
        let magnitude: u32 = text[exp_start..pos]
            .parse()
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| parse_error(exp_start, "exponent out of range"))?;
        exponent = if exp_negative {
            -i64::from(magnitude)
        } else {
            i64::from(magnitude)
        };
    }

    if pos != bytes.len() {
        return Err(parse_error(pos, "unexpected character"));
    }

    let mantissa = digits_to_int(&format!("{int_digits}{frac_digits}"));
    let scale = exponent - frac_digits.len() as i64;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        Ratio::from_integer(mantissa * Pow::pow(&ten, scale as u64))
    } else {
        Ratio::new(mantissa, Pow::pow(&ten, scale.unsigned_abs()))
    };
    Ok(if negative { -value } else { value })
}

fn skip_digits(bytes: &[u8], mut pos: usize) -> usize {
    while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
        pos += 1;
    }
    pos
}

fn digits_to_int(digits: &str) -> BigInt {
    BigInt::from_str_radix(digits, 10).expect("caller passes ASCII digits only")
}

fn parse_error(position: usize, message: &str) -> Error {
    Error::Parse {
        position,
        message: message.to_owned(),
    }
}
