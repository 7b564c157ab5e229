//! Scalar abstractions.
//!
//! Exact elimination is written against [`ExactInt`], which is satisfied by
//! `i64`, `i128` and [`num_bigint::BigInt`]. Machine integers report overflow
//! through the checked operations instead of wrapping, so callers can retry
//! with arbitrary precision. Floating-point verification is written against
//! [`Real`] (`f32` or `f64`).

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

pub trait ExactInt:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
    /// Least non-negative residue modulo `m`, or `None` if it does not fit.
    fn residue(&self, m: u64) -> Option<u64> {
        let modulus = Self::from_u64(m)?;
        self.mod_floor(&modulus).to_u64()
    }
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

pub trait Real: Float + FloatConst + Debug + Display + Send + Sync {}

impl<T> Real for T where T: Float + FloatConst + Debug + Display + Send + Sync {}
