//! The exact-integer scalar abstraction used by the counting, zeta and
//! polynomial code.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

use crate::error::{Error, Result};

/// Exact signed integers. `BigInt` is the workhorse; `i64` and `i128` work
/// for small parameters and overflow like the primitive types do.
pub trait ExactInt:
    Clone + Debug + Display + Ord + Signed + Integer + FromPrimitive + Send + Sync + 'static
{
    fn from_i64_exact(n: i64) -> Self {
        Self::from_i64(n).expect("every exact integer type holds i64 values")
    }

    fn from_u64_exact(n: u64) -> Self {
        Self::from_u64(n).expect("value does not fit the integer type")
    }

    fn pow_u32(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }

    /// `self / rhs`, failing when the division leaves a remainder.
    fn exact_div(&self, rhs: &Self, context: &str) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ExactDivisionFailure(format!("{context}: division by zero")));
        }
        let (q, r) = self.div_rem(rhs);
        if !r.is_zero() {
            return Err(Error::ExactDivisionFailure(format!(
                "{context}: {self} / {rhs} leaves remainder {r}"
            )));
        }
        Ok(q)
    }

    fn neg_one() -> Self {
        -Self::one()
    }
}

impl<T> ExactInt for T where
    T: Clone + Debug + Display + Ord + Signed + Integer + FromPrimitive + Send + Sync + 'static
{
}

/// `(-1)^k`.
pub fn sign<T: ExactInt>(k: u64) -> T {
    if k % 2 == 0 {
        T::one()
    } else {
        T::neg_one()
    }
}
