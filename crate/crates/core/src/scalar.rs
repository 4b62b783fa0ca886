//! Numeric field abstraction shared by the floating-point and exact rational
//! evaluation paths of the closed-form solvers.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// An ordered field the closed forms can be evaluated in.
///
/// `f64` comparisons carry a small relative slack so that boundary cases
/// computed with round-off still land on the side the exact value would;
/// [`BigRational`] compares exactly.
pub trait Scalar: Clone + PartialOrd + Debug + Num + Signed {
    /// Exact conversion for rationals; identity for `f64`.
    fn from_f64(x: f64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Relative comparison slack.
    fn slack() -> Self;

    /// `a <= b` up to the type's slack.
    fn approx_le(&self, other: &Self) -> bool {
        let scale = if other.abs() > Self::one() { other.abs() } else { Self::one() };
        *self <= other.clone() + Self::slack() * scale
    }

    /// `a >= b` up to the type's slack.
    fn approx_ge(&self, other: &Self) -> bool {
        other.approx_le(self)
    }

    /// Clamps values within slack of zero (from either side) to exactly zero.
    fn snap_zero(self) -> Self {
        if self.abs() <= Self::slack() {
            Self::zero()
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn slack() -> Self {
        1e-12
    }
}

impl Scalar for BigRational {
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn slack() -> Self {
        BigRational::zero()
    }
}

/// Shorthand for building exact rationals in fixtures.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    <BigRational as Scalar>::from_ratio(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_slack_absorbs_roundoff() {
        let e = 3f64.ln().exp();
        assert!(3.0f64.approx_le(&e));
        assert!(e.approx_le(&3.0));
        assert!(!3.1f64.approx_le(&3.0));
    }

    #[test]
    fn rationals_compare_exactly() {
        let third = rational(1, 3);
        assert!(third.approx_le(&rational(1, 3)));
        assert!(!rational(1, 3).approx_le(&rational(333_333, 1_000_000)));
        assert_eq!(Scalar::to_f64(&rational(1, 4)), 0.25);
        assert_eq!(<BigRational as Scalar>::from_f64(0.375), rational(3, 8));
    }
}
