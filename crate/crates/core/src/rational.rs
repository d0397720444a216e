//! Exact rational numbers and the extended value type used for `d_min`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An exact signed rational number, always kept in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rational {
    /// Builds `numer / denom`; `None` when the denominator is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `numer / denom` for 128-bit integers, reduced without big-integer
    /// arithmetic. Panics on a zero denominator.
    pub fn from_i128_ratio(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        let (mut a, mut b) = (numer.unsigned_abs(), denom.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        let g = a.max(1) as i128;
        let sign = if denom < 0 { -1 } else { 1 };
        Rational(BigRational::new_raw(BigInt::from(sign * (numer / g)), BigInt::from(denom.abs() / g)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    /// `numer / denom` for machine integers. Panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("zero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplies by a non-negative count (an index difference).
    pub fn mul_count(&self, k: usize) -> Self {
        Rational(&self.0 * BigInt::from(k))
    }

    /// Divides by a positive count (an index difference).
    pub fn div_count(&self, k: usize) -> Self {
        assert!(k > 0, "division by zero count");
        Rational(&self.0 / BigInt::from(k))
    }

    /// Euclidean remainder into `[0, modulus)`; `modulus` must be positive.
    pub fn rem_euclid(&self, modulus: &Rational) -> Rational {
        debug_assert!(modulus.is_positive());
        let q = (&self.0 / &modulus.0).floor();
        Rational(&self.0 - q * &modulus.0)
    }

    /// Nearest `f64` (correctly rounded for values in range).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `Some(v)` when the value is an integer fitting in `i128`.
    pub fn to_i128(&self) -> Option<i128> {
        if self.is_integer() {
            self.numer().to_i128()
        } else {
            None
        }
    }

    /// Integers print bare, everything else as `p/q`.
    pub fn to_plain_string(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            self.to_string()
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value)
    }
}

/// Integer operands skip the gcd normalisation of the general path.
fn integer_shortcut(a: &BigRational, b: &BigRational, op: fn(&BigInt, &BigInt) -> BigInt) -> Option<Rational> {
    (a.is_integer() && b.is_integer()).then(|| Rational(BigRational::from_integer(op(a.numer(), b.numer()))))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident $(, $shortcut:expr)?) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $(if let Some(v) = integer_shortcut(&self.0, &rhs.0, $shortcut) {
                    return v;
                })?
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b);
forward_binop!(Sub, sub, |a, b| a - b);
forward_binop!(Mul, mul, |a, b| a * b);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Rational {
    type Err = RationalParseError;

    /// Accepts `[+-]digits`, `[+-]digits.digits` (either side may be empty,
    /// not both) and `[+-]digits/digits`. Decimals convert exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || RationalParseError::Invalid(s.to_string());
        if s.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let value = if let Some((num, den)) = body.split_once('/') {
            if !is_digits(num) || !is_digits(den) {
                return Err(invalid());
            }
            let num: BigInt = num.parse().map_err(|_| invalid())?;
            let den: BigInt = den.parse().map_err(|_| invalid())?;
            Rational::new(num, den).ok_or_else(|| RationalParseError::ZeroDenominator(s.to_string()))?
        } else if let Some((int, frac)) = body.split_once('.') {
            if (int.is_empty() && frac.is_empty())
                || (!int.is_empty() && !is_digits(int))
                || (!frac.is_empty() && !is_digits(frac))
            {
                return Err(invalid());
            }
            let digits = format!("{int}{frac}");
            let num: BigInt = digits.parse().map_err(|_| invalid())?;
            let den = num_traits::pow(BigInt::from(10u8), frac.len());
            Rational(BigRational::new(num, den))
        } else {
            if !is_digits(body) {
                return Err(invalid());
            }
            Rational::from_integer(body.parse::<BigInt>().map_err(|_| invalid())?)
        };
        Ok(if negative { -value } else { value })
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A value that may be unbounded (`+∞`). `Unbounded` compares above every
/// finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedValue<T = Rational> {
    Finite(T),
    Unbounded,
}

impl<T> ExtendedValue<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            ExtendedValue::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, ExtendedValue::Unbounded)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> ExtendedValue<U> {
        match self {
            ExtendedValue::Finite(v) => ExtendedValue::Finite(f(v)),
            ExtendedValue::Unbounded => ExtendedValue::Unbounded,
        }
    }
}

impl ExtendedValue<Rational> {
    /// Adds a finite offset; unbounded stays unbounded.
    pub fn add_finite(&self, rhs: &Rational) -> Self {
        match self {
            ExtendedValue::Finite(v) => ExtendedValue::Finite(v + rhs),
            ExtendedValue::Unbounded => ExtendedValue::Unbounded,
        }
    }

    /// Compares against a finite value.
    pub fn cmp_finite(&self, rhs: &Rational) -> Ordering {
        match self {
            ExtendedValue::Finite(v) => v.cmp(rhs),
            ExtendedValue::Unbounded => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtendedValue<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(v) => fmt::Display::fmt(v, f),
            ExtendedValue::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl Serialize for ExtendedValue<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtendedValue<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "unbounded" {
            Ok(ExtendedValue::Unbounded)
        } else {
            s.parse().map(ExtendedValue::Finite).map_err(serde::de::Error::custom)
        }
    }
}
