//! Exact rationals for preference values and utilities.
//!
//! Decimal inputs such as `0.8` or `8e-1` are read as exact fractions, and
//! values print back as terminating decimals whenever the denominator
//! allows it (`p/q` otherwise).

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a decimal number or fraction")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_big(value: BigRational) -> Self {
        Rational(value)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `a/b`, plain integers and decimals with an optional exponent.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(text.to_string());
        let s = text.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational(BigRational::new(n, d)));
        }

        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(pos) => {
                let exp: i32 = s[pos + 1..].parse().map_err(|_| err())?;
                (&s[..pos], exp)
            }
            None => (s, 0),
        };
        let (negative, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = digits.parse().map_err(|_| err())?;
        if negative {
            numer = -numer;
        }
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Rational(value))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = self.0.numer();
        let denom = self.0.denom();
        if denom.is_one() {
            return write!(f, "{numer}");
        }
        // Terminating decimal iff the denominator has no prime factors
        // other than 2 and 5.
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let mut rest = denom.clone();
        let (mut twos, mut fives) = (0usize, 0usize);
        while rest.is_even() {
            rest /= &two;
            twos += 1;
        }
        while (&rest % &five).is_zero() {
            rest /= &five;
            fives += 1;
        }
        if !rest.is_one() {
            return write!(f, "{numer}/{denom}");
        }
        let places = twos.max(fives);
        let scaled = numer * num_traits::pow(BigInt::from(10), places) / denom;
        let sign = if scaled.is_negative() { "-" } else { "" };
        let digits = format!("{:0>width$}", scaled.abs(), width = places + 1);
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        write!(f, "{sign}{int_part}.{frac_part}")
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for Rational {
    type Output = Rational;

    fn add(self, rhs: &'a Rational) -> Rational {
        Rational(self.0 + &rhs.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}
