//! Scalar abstractions.
//!
//! Exact coefficient rings implement [`Coeff`]; every operation is checked so
//! fixed-width instantiations turn overflow into [`Error::Overflow`]
//! instead of wrapping. Exact fields used for rank computations implement
//! [`Field`].

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact commutative ring with checked arithmetic.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Neg<Output = Self>
{
    fn from_i128(v: i128) -> Option<Self>;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;

    fn add_checked(&self, other: &Self) -> Result<Self> {
        self.checked_add(other).ok_or(Error::Overflow("coefficient addition"))
    }

    fn sub_checked(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other).ok_or(Error::Overflow("coefficient subtraction"))
    }

    fn mul_checked(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other).ok_or(Error::Overflow("coefficient multiplication"))
    }

    fn lift(v: i128) -> Result<Self> {
        Self::from_i128(v).ok_or(Error::Overflow("coefficient conversion"))
    }
}

macro_rules! impl_coeff_prim {
    ($($t:ty),*) => {
        $(
            impl Coeff for $t {
                #[inline]
                fn from_i128(v: i128) -> Option<Self> {
                    <$t>::try_from(v).ok()
                }
                #[inline]
                fn from_bigint(v: &BigInt) -> Option<Self> {
                    v.to_i128().and_then(|x| <$t>::try_from(x).ok())
                }
                #[inline]
                fn to_bigint(&self) -> BigInt {
                    BigInt::from(*self)
                }
            }
        )*
    };
}

impl_coeff_prim!(i32, i64, i128);

impl Coeff for BigInt {
    fn from_i128(v: i128) -> Option<Self> {
        Some(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// An exact field. Only exact instantiations (rationals) give meaningful ranks.
pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> {}

impl<T> Field for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> {}

/// Binomial coefficient `C(top, bottom)` as an exact big integer.
pub fn binomial(top: u64, bottom: u64) -> BigInt {
    if bottom > top {
        return BigInt::zero();
    }
    let bottom = bottom.min(top - bottom);
    let mut acc = BigInt::one();
    for i in 0..bottom {
        acc *= top - i;
        acc /= i + 1;
    }
    acc
}
