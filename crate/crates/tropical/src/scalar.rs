//! Scalar abstraction for exact min-plus arithmetic.
//!
//! Every algorithm in this crate works over any [`Scalar`]: an exactly
//! ordered field of rationals. The `Ord` bound is load-bearing — tropical
//! singularity is an exact tie condition, so approximate types (floats) are
//! excluded by construction. Two instantiations are exported at the crate
//! root: [`crate::Rational`] (arbitrary precision, the default) and
//! [`crate::Rational64`] (fixed width, faster, panics on overflow).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive};

/// An exact, totally ordered rational scalar.
pub trait Scalar:
    Clone + Ord + Eq + Hash + Debug + Display + Signed + Send + Sync + 'static
{
    /// Converts from an arbitrary-precision rational, if representable.
    fn from_big_rational(value: &BigRational) -> Option<Self>;

    /// Converts to an arbitrary-precision rational (always exact).
    fn to_big_rational(&self) -> BigRational;

    /// Converts a small integer.
    fn from_int(value: i64) -> Self;

    /// Exact division by a small positive integer.
    fn div_int(&self, divisor: u32) -> Self {
        self.clone() / Self::from_int(i64::from(divisor))
    }
}

impl Scalar for BigRational {
    fn from_big_rational(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

impl Scalar for Ratio<i64> {
    fn from_big_rational(value: &BigRational) -> Option<Self> {
        let numer = value.numer().to_i64()?;
        let denom = value.denom().to_i64()?;
        Some(Ratio::new(numer, denom))
    }

    fn to_big_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_int(value: i64) -> Self {
        Ratio::from_integer(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_round_trip() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let r = Ratio::<i64>::from_big_rational(&half).unwrap();
        assert_eq!(r, Ratio::new(1, 2));
        assert_eq!(r.to_big_rational(), half);
    }

    #[test]
    fn div_int_is_exact() {
        let third = BigRational::from_int(1).div_int(3);
        assert_eq!(third, BigRational::new(BigInt::from(1), BigInt::from(3)));
    }

    #[test]
    fn narrow_conversion_fails_gracefully() {
        let huge = BigRational::from_integer(BigInt::from(i64::MAX) * 4);
        assert!(Ratio::<i64>::from_big_rational(&huge).is_none());
    }
}
