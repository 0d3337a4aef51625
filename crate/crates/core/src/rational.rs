//! Exact rational scalar.
//!
//! [`Rational`] is a thin newtype over an arbitrary precision fraction that is
//! always kept in lowest terms with a positive denominator. Its textual form
//! is `"p/q"`, or `"p"` when the denominator is one, with the sign carried by
//! the numerator. That form is also its serde representation.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numerator / denominator`, reducing to canonical form.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, Error> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    /// Panicking shorthand for literals in tables and tests.
    pub fn frac(numerator: i64, denominator: i64) -> Self {
        Self::new(numerator, denominator).expect("zero denominator in literal")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// The integer value, if this is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Exact square root when it exists in Q.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational(BigRational::new(n, d)))
    }

    /// 2-adic valuation; `None` for zero.
    pub fn two_adic_valuation(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let v = |n: &BigInt| n.trailing_zeros().unwrap_or(0) as i64;
        Some(v(self.numer()) - v(self.denom()))
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        if num.is_empty() || den.is_empty() || den.starts_with(['-', '+']) {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Rational::new(num, den)
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

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(n)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, i128, u128, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, rhs: Rational) {
                self.0.$am(rhs.0);
            }
        }
        impl<'a> $atr<&'a Rational> for Rational {
            fn $am(&mut self, rhs: &'a Rational) {
                self.0.$am(&rhs.0);
            }
        }
    };
}
binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

// Division panics on a zero divisor, like integer division; use
// `checked_div` where the divisor is data.
impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a, 'b> Div<&'b Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        &self / rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer((*other).into()))
    }
}
