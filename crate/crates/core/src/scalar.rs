//! Real scalar backends.
//!
//! Every matrix and quaternion type in this crate is generic over [`Scalar`].
//! Three realizations are provided: `f64`, the exact [`Rational`] type and the
//! integer type [`BigInt`]. Integers are only a ring; operations that divide
//! require [`Field`].

use core::fmt::Debug;

pub use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Arbitrary precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = BigRational;

pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug {
    /// `true` for backends where equality is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero test with tolerance; exact backends ignore `tol`.
    fn near_zero(&self, tol: f64) -> bool;

    fn is_finite_value(&self) -> bool {
        true
    }
}

/// Scalars in which `/` is true division.
pub trait Field: Scalar {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn near_zero(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Field for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        // Ratio<BigInt>::to_f64 handles huge numerators and denominators
        // without overflowing to inf/inf.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn near_zero(&self, _tol: f64) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl Field for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for BigInt {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn near_zero(&self, _tol: f64) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    Scalar::to_f64(r)
}

/// Relative comparison with an absolute floor, used wherever float results
/// are compared against each other.
pub fn approx_eq(a: f64, b: f64, rel: f64, abs_floor: f64) -> bool {
    let diff = (a - b).abs();
    diff <= abs_floor || diff <= rel * a.abs().max(b.abs())
}
