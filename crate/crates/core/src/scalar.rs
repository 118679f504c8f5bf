//! Numeric abstraction shared by every metric, cost and linear-program routine.
//!
//! Everything numeric in this crate is generic over [`Scalar`]. `f64` is the
//! workhorse; [`Rational`](crate::Rational) runs the same code in exact
//! arithmetic, which is how audit values are pinned without rounding noise.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Slack allowed when validating metric inequalities.
    fn metric_tolerance() -> Self;

    /// Threshold below which a pivot element or reduced cost counts as zero.
    fn pivot_tolerance() -> Self;

    /// Converts an `f64` constant, panicking only on NaN/infinite input.
    fn of(value: f64) -> Self {
        Self::from_f64(value).unwrap_or_else(|| panic!("{value} has no finite scalar representation"))
    }

    fn of_usize(value: usize) -> Self {
        Self::from_usize(value).expect("usize always converts")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn metric_tolerance() -> Self {
        1e-9
    }

    fn pivot_tolerance() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn metric_tolerance() -> Self {
        1e-4
    }

    fn pivot_tolerance() -> Self {
        1e-6
    }
}

impl Scalar for BigRational {
    fn metric_tolerance() -> Self {
        BigRational::zero()
    }

    fn pivot_tolerance() -> Self {
        BigRational::zero()
    }

    fn of(value: f64) -> Self {
        // Decimal literals such as 0.1 map to the nearest short fraction rather
        // than the binary expansion, so hand-written constants stay exact.
        decimal_rational(value)
    }

    fn is_exact() -> bool {
        true
    }
}

fn decimal_rational(value: f64) -> BigRational {
    assert!(value.is_finite(), "{value} has no finite scalar representation");
    let text = format!("{value:e}");
    let (mantissa, exponent) = text.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits_part = mantissa.trim_start_matches('-');
    let (int_part, frac_part) = digits_part.split_once('.').unwrap_or((digits_part, ""));
    let digits: BigInt = format!("{int_part}{frac_part}").parse().expect("decimal digits");
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut numer = digits;
    let mut denom = BigInt::from(1u8);
    if scale >= 0 {
        numer *= num_traits::pow(ten, scale as usize);
    } else {
        denom = num_traits::pow(ten, (-scale) as usize);
    }
    if negative {
        numer = -numer;
    }
    BigRational::new(numer, denom)
}

pub fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

pub fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

/// `a <= b` up to the scalar's metric tolerance, relative once the values
/// exceed 1.
pub fn approx_le<T: Scalar>(a: &T, b: &T) -> bool {
    let tol = T::metric_tolerance();
    if tol.is_zero() {
        return *a <= *b;
    }
    let scale = max_of(T::one(), max_of(a.abs(), b.abs()));
    a.clone() <= b.clone() + tol * scale
}

pub fn approx_eq<T: Scalar>(a: &T, b: &T) -> bool {
    approx_le(a, b) && approx_le(b, a)
}

/// Total order for sorting scalars; incomparable values (NaN) sort as equal.
pub fn cmp_scalar<T: Scalar>(a: &T, b: &T) -> std::cmp::Ordering {
    a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal)
}
