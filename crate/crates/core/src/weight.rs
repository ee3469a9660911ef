//! Exact nonnegative rational weights.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weight must be nonnegative, got {0}")]
    Negative(BigRational),
    #[error("cannot parse weight {0:?}")]
    Parse(String),
}

/// An exact rational weight, always `>= 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(BigRational);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn from_int(n: u64) -> Self {
        Weight(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Weight(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn new(value: BigRational) -> Result<Self, WeightError> {
        if value.is_negative() {
            Err(WeightError::Negative(value))
        } else {
            Ok(Weight(value))
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero()
    }

    pub fn half(&self) -> Self {
        Weight(&self.0 / BigInt::from(2))
    }

    /// `self - other`, or `None` if the result would be negative.
    pub fn checked_sub(&self, other: &Weight) -> Option<Weight> {
        let d = &self.0 - &other.0;
        if d.is_negative() {
            None
        } else {
            Some(Weight(d))
        }
    }

    pub fn scale(&self, q: &Weight) -> Weight {
        Weight(&self.0 * &q.0)
    }

    pub fn min<'a>(&'a self, other: &'a Weight) -> &'a Weight {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parsed = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| WeightError::Parse(s.into()))?;
                let d: BigInt = d.trim().parse().map_err(|_| WeightError::Parse(s.into()))?;
                if d.is_zero() {
                    return Err(WeightError::Parse(s.into()));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(
                t.parse::<BigInt>()
                    .map_err(|_| WeightError::Parse(s.into()))?,
            ),
        };
        Weight::new(parsed)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &'a Weight) -> Weight {
        Weight(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        self.0 += &rhs.0;
    }
}

impl Mul<u64> for &Weight {
    type Output = Weight;
    fn mul(self, rhs: u64) -> Weight {
        Weight(&self.0 * BigInt::from(rhs))
    }
}

impl Div<u64> for &Weight {
    type Output = Weight;
    fn div(self, rhs: u64) -> Weight {
        Weight(&self.0 / BigInt::from(rhs))
    }
}

/// Subtraction saturating at zero is never what callers want; this panics on underflow.
impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.checked_sub(rhs).expect("weight subtraction underflow")
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |a, b| &a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_exactly() {
        let w: Weight = "1/3".parse().unwrap();
        assert_eq!(w.to_string(), "1/3");
        assert_eq!("4/2".parse::<Weight>().unwrap().to_string(), "2");
        assert_eq!("7".parse::<Weight>().unwrap(), Weight::from_int(7));
    }

    #[test]
    fn rejects_negative_and_garbage() {
        assert!(matches!(
            "-1".parse::<Weight>(),
            Err(WeightError::Negative(_))
        ));
        assert!("1/0".parse::<Weight>().is_err());
        assert!("0.5".parse::<Weight>().is_err());
    }

    #[test]
    fn half_and_checked_sub() {
        assert_eq!(Weight::ratio(7, 3).half(), Weight::ratio(7, 6));
        assert_eq!(Weight::from_int(1).checked_sub(&Weight::from_int(2)), None);
    }
}
