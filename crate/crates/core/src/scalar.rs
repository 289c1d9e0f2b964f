//! Numeric abstraction shared by every algorithm in the crate.
//!
//! The decision-model math only needs an ordered field, so everything is
//! written against [`Scalar`]. Exact rationals give digit-exact tables and
//! breakpoints; `f64`/`f32` are accepted for quick exploratory work, with
//! comparisons relaxed by [`Scalar::tolerance`].

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Ordered field element usable as a payoff, probability or λ value.
pub trait Scalar:
    Num
    + Neg<Output = Self>
    + Clone
    + PartialOrd
    + Debug
    + Display
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// `true` when arithmetic is exact (ties are decided by equality).
    const EXACT: bool;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Slack used when comparing values; zero for exact types.
    fn tolerance() -> Self;

    /// Parses an integer, a plain decimal (`-1.25`) or a `p/q` fraction.
    fn parse_literal(text: &str) -> Option<Self>;

    /// Lossless textual form; `parse_literal(to_literal(x)) == x`.
    fn to_literal(&self) -> String;

    /// Rounds half away from zero to `places` decimals.
    fn format_fixed(&self, places: usize) -> String;

    /// Shortest decimal that represents the value exactly, always with a
    /// fractional part (`1.0`, `0.45`). Exact values without a short
    /// terminating expansion fall back to `p/q`.
    fn format_decimal(&self) -> String;
}

/// `a > b` beyond the scalar's tolerance.
pub fn definitely_greater<T: Scalar>(a: &T, b: &T) -> bool {
    if T::EXACT {
        a > b
    } else {
        a.clone() > b.clone() + T::tolerance()
    }
}

/// `a == b` within the scalar's tolerance.
pub fn approx_eq<T: Scalar>(a: &T, b: &T) -> bool {
    if T::EXACT {
        a == b
    } else {
        !definitely_greater(a, b) && !definitely_greater(b, a)
    }
}

fn split_sign(text: &str) -> (bool, &str) {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = text.strip_prefix('+') {
        (false, rest)
    } else {
        (false, text)
    }
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses the three accepted spellings into an exact (numerator, denominator)
/// pair of big integers. Exponent notation is rejected.
fn parse_exact(text: &str) -> Option<BigRational> {
    let (negative, body) = split_sign(text);
    let value = if let Some((p, q)) = body.split_once('/') {
        let (p, q) = (p.trim(), q.trim());
        let (p_neg, p) = split_sign(p);
        if !all_digits(p) || !all_digits(q) {
            return None;
        }
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        let p: BigInt = p.parse().ok()?;
        let r = BigRational::new(p, q);
        if p_neg {
            -r
        } else {
            r
        }
    } else if let Some((int, frac)) = body.split_once('.') {
        if (int.is_empty() && frac.is_empty())
            || !(int.is_empty() || all_digits(int))
            || !(frac.is_empty() || all_digits(frac))
        {
            return None;
        }
        let digits = format!("{int}{frac}");
        let numer: BigInt = digits.parse().ok()?;
        let denom = num_traits::pow(BigInt::from(10u32), frac.len());
        BigRational::new(numer, denom)
    } else {
        if !all_digits(body) {
            return None;
        }
        BigRational::from_integer(body.parse().ok()?)
    };
    Some(if negative { -value } else { value })
}

/// Digits of `|value|` rounded half away from zero at `places` decimals.
fn fixed_digits(value: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = (value.abs() * BigRational::from_integer(scale)).round();
    let digits = scaled.to_integer().to_string();
    let negative = value.is_negative() && digits.bytes().any(|b| b != b'0');
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

const MAX_EXACT_DECIMALS: usize = 12;

fn exact_decimal(value: &BigRational) -> String {
    let mut denom = value.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let (mut twos, mut fives) = (0usize, 0usize);
    while denom.is_multiple_of(&two) {
        denom /= &two;
        twos += 1;
    }
    while denom.is_multiple_of(&five) {
        denom /= &five;
        fives += 1;
    }
    let places = twos.max(fives);
    if !denom.is_one() || places > MAX_EXACT_DECIMALS {
        return value.to_string();
    }
    fixed_digits(value, places.max(1))
}

fn ratio_literal(numer: &BigInt, denom: &BigInt) -> String {
    if denom.is_one() {
        numer.to_string()
    } else {
        format!("{numer}/{denom}")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(numer.into(), denom.into())
    }

    fn tolerance() -> Self {
        Self::zero()
    }

    fn parse_literal(text: &str) -> Option<Self> {
        parse_exact(text)
    }

    fn to_literal(&self) -> String {
        ratio_literal(self.numer(), self.denom())
    }

    fn format_fixed(&self, places: usize) -> String {
        fixed_digits(self, places)
    }

    fn format_decimal(&self) -> String {
        exact_decimal(self)
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer, denom)
    }

    fn tolerance() -> Self {
        Self::zero()
    }

    fn parse_literal(text: &str) -> Option<Self> {
        let big = parse_exact(text)?;
        Some(Ratio::new(big.numer().to_i64()?, big.denom().to_i64()?))
    }

    fn to_literal(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn format_fixed(&self, places: usize) -> String {
        fixed_digits(&to_big(self), places)
    }

    fn format_decimal(&self) -> String {
        exact_decimal(&to_big(self))
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }

            fn tolerance() -> Self {
                $eps
            }

            fn parse_literal(text: &str) -> Option<Self> {
                let exact = parse_exact(text)?;
                exact.to_f64().map(|v| v as $t)
            }

            fn to_literal(&self) -> String {
                let s = format!("{}", self);
                if s.contains(['.', 'e', 'i', 'N']) {
                    s
                } else {
                    format!("{s}.0")
                }
            }

            fn format_fixed(&self, places: usize) -> String {
                match BigRational::from_float(*self) {
                    Some(exact) => fixed_digits(&exact, places),
                    None => format!("{}", self),
                }
            }

            fn format_decimal(&self) -> String {
                self.to_literal()
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);
