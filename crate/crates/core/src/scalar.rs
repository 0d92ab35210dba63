use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

/// Number type the walk and analytics sums are written against.
///
/// Every quantity in this crate is a weighted sum of endpoint
/// probabilities, so the math is identical for `BigRational` (exact
/// engine) and `f64` (log-space engine); the bound collects what those
/// sums actually need.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
    + ToPrimitive
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + PartialOrd
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Div<Output = Self>
        + FromPrimitive
        + ToPrimitive
{
}

/// Embeds a small signed integer (lattice level, step count, weight).
pub(crate) fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("scalar embeds i64")
}
