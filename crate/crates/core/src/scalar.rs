//! Scalars usable as series coefficients.

use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with enough division to run the series recurrences:
/// division by small integers always, general inversion where it exists.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The scalar `num/den`. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Multiplicative inverse, or `None` when the value is not a unit.
    fn try_recip(&self) -> Option<Self>;
}

impl Coefficient for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Coefficient for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn try_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
}

/// Shorthand for the exact rational `num/den`.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational equal to the given finite `f64`.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}
